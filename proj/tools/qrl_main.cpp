#include <cstdio>
int main() { std::puts("qrl cli placeholder"); return 0; }

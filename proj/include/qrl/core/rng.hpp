#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace qrl {

// Counter-based deterministic random stream (Philox4x32-10).
//
// A stream is identified by (seed, stream_id). Equal identifiers reproduce
// bit-identical draw sequences on every platform, which is what lets trials
// run in parallel while staying replayable. All sampling helpers below are
// hand-rolled on top of the raw bits; std::uniform_*_distribution is avoided
// on purpose, since its output is implementation-defined.
class RngStream {
  public:
    using result_type = std::uint64_t;
    static constexpr const char* kAlgorithmId = "philox4x32-10";

    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    std::uint32_t next_u32() {
        if (avail_ == 0) refill();
        return block_[--avail_];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    result_type operator()() { return next_u64(); }

    // Unbiased integer in [0, n). Rejection on the top of the 64-bit range.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform_double() < p; }

  private:
    void refill() {
        // Philox4x32-10: counter = (ctr lo, ctr hi, stream lo, stream hi),
        // key = (seed lo, seed hi).
        std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
        std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
        std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
        std::uint32_t k0 = static_cast<std::uint32_t>(seed_);
        std::uint32_t k1 = static_cast<std::uint32_t>(seed_ >> 32);
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = kMul0 * static_cast<std::uint64_t>(c0);
            const std::uint64_t p1 = kMul1 * static_cast<std::uint64_t>(c2);
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            c0 = hi1 ^ c1 ^ k0;
            c1 = lo1;
            c2 = hi0 ^ c3 ^ k1;
            c3 = lo0;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        block_ = {c3, c2, c1, c0};  // popped back-to-front, so x0 comes out first
        avail_ = 4;
        ++counter_;
    }

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int avail_ = 0;
};

}  // namespace qrl

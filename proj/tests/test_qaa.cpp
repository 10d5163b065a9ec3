#include <catch_amalgamated.hpp>

#include <cmath>

#include "qrl/env/stochastic.hpp"
#include "qrl/qsim/amplitude.hpp"

using namespace qrl;

namespace {

// n=2, t=1, P(win|a0)=0.8, P(win|a1)=0.2; reward iff the percept is s0.
StochasticEnv env_two_arm() {
    std::vector<std::vector<std::vector<double>>> tables(1);
    tables[0] = {{0.8, 0.2}, {0.2, 0.8}};
    return make_stochastic_env(2, 2, 1, std::move(tables),
                               [](const std::vector<int>&, const std::vector<int>& s) {
                                   return s[0] == 0 ? 1 : 0;
                               });
}

// Point-mass rows: percept equals the action, never rewarded (degenerate).
StochasticEnv env_deterministic_t1() {
    std::vector<std::vector<std::vector<double>>> tables(1);
    tables[0] = {{1.0, 0.0}, {0.0, 1.0}};
    return make_stochastic_env(2, 2, 1, std::move(tables),
                               [](const std::vector<int>&, const std::vector<int>& s) {
                                   return s[0] == 1 ? 1 : 0;
                               });
}

// n=2, t=2 instance with history-dependent second-step rows.
StochasticEnv env_t2() {
    std::vector<std::vector<std::vector<double>>> tables(2);
    tables[0] = {{0.9, 0.1}, {0.5, 0.5}};
    tables[1].assign(8, {0.5, 0.5});
    tables[1][0] = {0.2, 0.8};  // a=(0,0), s2=0
    tables[1][5] = {0.7, 0.3};  // a=(1,0), s2=1
    return make_stochastic_env(2, 2, 2, std::move(tables),
                               [](const std::vector<int>&, const std::vector<int>& s) {
                                   return (s[0] == 0 && s[1] == 1) ? 1 : 0;
                               });
}

double unitarity_defect(const StochasticOracleSet& set) {
    StateVector probe(set.layout());
    double worst = 0.0;
    for (std::size_t i = 0; i < probe.dim(); ++i) {
        StateVector e(set.layout());
        e.amp(i) = 1.0;
        StateVector u = e;
        set.apply_raw_percept(u);
        StateVector back = u;
        set.apply_raw_percept_adjoint(back);
        for (std::size_t k = 0; k < back.dim(); ++k) {
            const double want = (k == i) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(back.amp(k) - cplx(want, 0.0)));
        }
        worst = std::max(worst, std::fabs(u.norm() - 1.0));
    }
    return worst;
}

}  // namespace

TEST_CASE("raw percept oracle on point-mass rows is the exact controlled map") {
    const auto env = env_deterministic_t1();
    const StochasticOracleSet set(env);
    for (int a = 0; a < 2; ++a) {
        StateVector sv = StateVector::basis(set.layout(), {a, 0, 0});
        set.apply_raw_percept(sv);
        // percept digit is a+1 (eps occupies 0), mirrored
        StateVector want = StateVector::basis(set.layout(), {a, a + 1, a + 1});
        REQUIRE(std::abs(sv.inner(want) - cplx(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("raw percept oracle amplitudes follow sqrt of the table") {
    const auto env = env_two_arm();
    const StochasticOracleSet set(env);
    StateVector sv = StateVector::basis(set.layout(), {0, 0, 0});
    set.apply_raw_percept(sv);
    const auto w0 = StateVector::basis(set.layout(), {0, 1, 1});
    const auto w1 = StateVector::basis(set.layout(), {0, 2, 2});
    REQUIRE(std::abs(w0.inner(sv) - cplx(std::sqrt(0.8), 0.0)) < 1e-12);
    REQUIRE(std::abs(w1.inner(sv) - cplx(std::sqrt(0.2), 0.0)) < 1e-12);
    REQUIRE(sv.norm() == Catch::Approx(1.0));

    SECTION("mirrored registers are perfectly correlated after U_S'") {
        RngStream rng(3, 0);
        for (int rep = 0; rep < 200; ++rep) {
            StateVector probe = StateVector::uniform_block(set.layout(), 1, {0, 0});
            set.apply_raw_percept(probe);
            auto copy = probe;
            const int s = copy.measure(std::size_t{1}, rng);
            const int mirror = copy.measure(std::size_t{2}, rng);
            REQUIRE(s == mirror);
        }
    }
}

TEST_CASE("raw percept oracle is unitary on the full space") {
    REQUIRE(unitarity_defect(StochasticOracleSet(env_two_arm())) < 1e-10);
    REQUIRE(unitarity_defect(StochasticOracleSet(env_deterministic_t1())) < 1e-10);
    REQUIRE(unitarity_defect(StochasticOracleSet(env_t2())) < 1e-10);
}

TEST_CASE("reward reflector is the diagonal sign flip") {
    const auto env = env_two_arm();
    const StochasticOracleSet set(env);

    SECTION("rewarded basis state flips sign") {
        StateVector sv = StateVector::basis(set.layout(), {0, 1, 1});  // (a0, win, win)
        set.apply_reward_reflector(sv);
        REQUIRE(sv.amp(sv.encode({0, 1, 1})).real() == Catch::Approx(-1.0));
        StateVector lose = StateVector::basis(set.layout(), {0, 2, 2});
        set.apply_reward_reflector(lose);
        REQUIRE(lose.amp(lose.encode({0, 2, 2})).real() == Catch::Approx(1.0));
    }
    SECTION("R == 0 gives the identity") {
        std::vector<std::vector<std::vector<double>>> tables(1);
        tables[0] = {{0.8, 0.2}, {0.2, 0.8}};
        const auto zero_env = make_stochastic_env(
            2, 2, 1, std::move(tables),
            [](const std::vector<int>&, const std::vector<int>&) { return 0; });
        const StochasticOracleSet zero_set(zero_env);
        RngStream rng(5, 0);
        StateVector sv(zero_set.layout());
        for (std::size_t i = 0; i < sv.dim(); ++i)
            sv.amp(i) = cplx(rng.uniform_double() - 0.5, rng.uniform_double() - 0.5);
        sv.normalize();
        auto copy = sv;
        zero_set.apply_reward_reflector(copy);
        for (std::size_t i = 0; i < sv.dim(); ++i) REQUIRE(std::abs(copy.amp(i) - sv.amp(i)) < 1e-15);
    }
    SECTION("applying twice is the identity") {
        RngStream rng(7, 0);
        StateVector sv(set.layout());
        for (std::size_t i = 0; i < sv.dim(); ++i)
            sv.amp(i) = cplx(rng.uniform_double() - 0.5, rng.uniform_double() - 0.5);
        sv.normalize();
        auto copy = sv;
        set.apply_reward_reflector(copy);
        set.apply_reward_reflector(copy);
        for (std::size_t i = 0; i < sv.dim(); ++i) REQUIRE(std::abs(copy.amp(i) - sv.amp(i)) < 1e-12);
    }
}

TEST_CASE("composed init reflector honors its busy-subspace contract") {
    const auto env = env_two_arm();
    const StochasticOracleSet set(env);
    const auto psi = set.initial_state();

    SECTION("psi_init maps to -psi_init") {
        auto sv = psi;
        set.apply_init_reflector(sv);
        for (std::size_t i = 0; i < sv.dim(); ++i)
            REQUIRE(std::abs(sv.amp(i) + psi.amp(i)) < 1e-10);
    }
    SECTION("busy-subspace states orthogonal to psi_init are preserved") {
        StateVector chi0 = StateVector::basis(set.layout(), {0, 0, 0});
        StateVector chi1 = StateVector::basis(set.layout(), {1, 0, 0});
        set.apply_raw_percept(chi0);
        set.apply_raw_percept(chi1);
        StateVector diff(set.layout());
        for (std::size_t i = 0; i < diff.dim(); ++i)
            diff.amp(i) = (chi0.amp(i) - chi1.amp(i)) / std::sqrt(2.0);
        auto out = diff;
        set.apply_init_reflector(out);
        for (std::size_t i = 0; i < out.dim(); ++i)
            REQUIRE(std::abs(out.amp(i) - diff.amp(i)) < 1e-10);
    }
    SECTION("agrees with 1-2|psi><psi| on the busy subspace") {
        for (int a = 0; a < 2; ++a) {
            StateVector chi = StateVector::basis(set.layout(), {a, 0, 0});
            set.apply_raw_percept(chi);
            auto composed = chi;
            set.apply_init_reflector(composed);
            auto exact = chi;
            exact.reflect_about(psi);
            double dist = 0.0;
            for (std::size_t i = 0; i < chi.dim(); ++i)
                dist += std::norm(composed.amp(i) - exact.amp(i));
            REQUIRE(std::sqrt(dist) < 1e-9);
        }
    }
}

TEST_CASE("qaa follows the analytic rotation with the exact reflector") {
    const auto env = env_two_arm();
    const StochasticOracleSet set(env);
    const auto init = set.initial_state();
    const auto tar = set.target_state();
    const double overlap = std::abs(init.inner(tar));
    REQUIRE(overlap == Catch::Approx(std::sqrt(0.5)).margin(1e-12));

    SECTION("zero iterations returns the initial state") {
        auto out = qaa(init, [&](StateVector& s) { set.apply_exact_init_reflector(s); },
                       [&](StateVector& s) { set.apply_reward_reflector(s); }, 0);
        REQUIRE(out.fidelity(init) == Catch::Approx(1.0));
    }
    SECTION("overlap 1/2 rotates to fidelity sin^2(3 pi/4) after one iteration") {
        auto out = qaa(init, [&](StateVector& s) { set.apply_exact_init_reflector(s); },
                       [&](StateVector& s) { set.apply_reward_reflector(s); }, 1);
        REQUIRE(out.fidelity(tar) == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(qaa_analytic_fidelity(overlap, 1) == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("fidelity trace matches analytics through over-rotation") {
        const auto env2 = env_t2();
        const StochasticOracleSet set2(env2);
        const auto init2 = set2.initial_state();
        const auto tar2 = set2.target_state();
        const double ovl2 = std::abs(init2.inner(tar2));
        const auto optimal = static_cast<std::size_t>(
            std::floor((M_PI / 4.0) / std::asin(ovl2)));
        for (std::size_t l = 0; l <= 2 * optimal + 2; ++l) {
            auto out = qaa(init2, [&](StateVector& s) { set2.apply_exact_init_reflector(s); },
                           [&](StateVector& s) { set2.apply_reward_reflector(s); }, l);
            REQUIRE(std::fabs(out.fidelity(tar2) - qaa_analytic_fidelity(ovl2, l)) < 1e-9);
        }
    }
}

TEST_CASE("exact target state samples actions by expected reward") {
    const auto env = env_two_arm();
    const StochasticOracleSet set(env);
    const auto tar = set.target_state();
    const auto dist = tar.head_marginal_probs(1);
    const auto brute = set.brute_force_target_action_distribution();
    REQUIRE(dist.size() == brute.size());
    for (std::size_t a = 0; a < dist.size(); ++a)
        REQUIRE(std::fabs(dist[a] - brute[a]) < 1e-12);
    REQUIRE(brute[0] == Catch::Approx(0.8).margin(1e-12));
    REQUIRE(brute[1] == Catch::Approx(0.2).margin(1e-12));
}

TEST_CASE("max reward search by threshold binary search") {
    // Toy cumulative rewards over 4 sequences (n=2, M=2).
    const std::vector<int> cumulative{0, 0, 3, 0};
    auto family = [&](std::size_t theta) {
        std::vector<std::uint8_t> table(4, 0);
        for (std::size_t i = 0; i < 4; ++i)
            table[i] = static_cast<std::uint8_t>(cumulative[i] >= static_cast<int>(theta) ? 1 : 0);
        return OracleChannel(oracle_from_table(OracleKind::PhaseFlip, 2, 2, table));
    };

    SECTION("all rewards zero: returns 0 with no witness") {
        auto zero_family = [&](std::size_t) {
            std::vector<std::uint8_t> table(4, 0);
            return OracleChannel(oracle_from_table(OracleKind::PhaseFlip, 2, 2, table));
        };
        RngStream rng(11, 0);
        const auto res = max_reward_search(zero_family, 4, rng);
        REQUIRE(res.best_threshold == 0);
        REQUIRE(!res.witness.has_value());
    }
    SECTION("single sequence with cumulative reward 3 under bound 4") {
        RngStream rng(13, 0);
        const auto res = max_reward_search(family, 4, rng);
        REQUIRE(res.best_threshold == 3);
        REQUIRE(res.witness.has_value());
        REQUIRE(*res.witness == std::vector<int>{1, 0});
        REQUIRE(res.probes <= 3);
    }
    SECTION("marked-set size is non-increasing in the threshold") {
        std::size_t prev = 4;
        for (std::size_t theta = 1; theta <= 4; ++theta) {
            const auto oracle = family(theta);
            REQUIRE(oracle.num_winners() <= prev);
            prev = oracle.num_winners();
        }
    }
}

#include <catch_amalgamated.hpp>

#include <cmath>

#include "qrl/core/stats.hpp"
#include "qrl/qsim/density_operator.hpp"
#include "qrl/qsim/grover.hpp"
#include "qrl/qsim/oracle.hpp"
#include "qrl/qsim/state_vector.hpp"

using namespace qrl;

namespace {

OracleSpec single_winner_spec(OracleKind kind, int n, int m, std::size_t winner_index) {
    std::vector<std::uint8_t> table(static_cast<std::size_t>(std::pow(n, m)), 0);
    table[winner_index] = 1;
    return oracle_from_table(kind, n, m, std::move(table));
}

// Winner-subspace probability read straight off the state vector.
double winner_probability(const StateVector& sv, const OracleChannel& oracle) {
    double p = 0.0;
    for (std::size_t i = 0; i < sv.dim(); ++i)
        if (oracle.reward_of_index(i)) p += std::norm(sv.amp(i));
    return p;
}

}  // namespace

TEST_CASE("state vector basics") {
    auto layout = action_sequence_layout(2, 3);
    auto sv = StateVector::basis(layout, {1, 0, 1});
    REQUIRE(sv.dim() == 8);
    REQUIRE(sv.amp(5) == cplx(1.0, 0.0));
    REQUIRE(sv.norm() == Catch::Approx(1.0));
    REQUIRE(sv.digit(5, 0) == 1);
    REQUIRE(sv.digit(5, 1) == 0);
    REQUIRE(sv.digit(5, 2) == 1);

    SECTION("dimension cap is enforced") {
        std::vector<RegisterInfo> big;
        const FiniteSpace s = make_action_space(8);
        for (int i = 0; i < 9; ++i) big.push_back({"r" + std::to_string(i), s});
        REQUIRE_THROWS_AS(StateVector(big), DimensionCap);  // 8^9 = 2^27 > 2^22
    }
    SECTION("basis state measures to its own label with probability 1") {
        RngStream rng(1, 0);
        auto copy = sv;
        REQUIRE(copy.measure(std::size_t{0}, rng) == 1);
        REQUIRE(copy.measure(std::size_t{1}, rng) == 0);
        REQUIRE(copy.measure(std::size_t{2}, rng) == 1);
        REQUIRE(copy.amp(5) == cplx(1.0, 0.0));
    }
}

TEST_CASE("measurement statistics match Born weights") {
    auto layout = action_sequence_layout(4, 1);
    StateVector sv(layout);
    for (std::size_t i = 0; i < 4; ++i) sv.amp(i) = 0.5;
    RngStream rng(17, 0);
    std::vector<double> counts(4, 0.0);
    const int draws = 100000;
    for (int d = 0; d < draws; ++d) {
        auto copy = sv;
        counts[static_cast<std::size_t>(copy.measure(std::size_t{0}, rng))] += 1.0;
    }
    const std::vector<double> expected(4, draws / 4.0);
    const double stat = chi_square_stat(counts, expected);
    REQUIRE(chi_square_pvalue(stat, 3) > 0.01);
    for (double c : counts)
        REQUIRE(std::fabs(c / draws - 0.25) < 3.0 * std::sqrt(0.25 * 0.75 / draws));
}

TEST_CASE("phase-flip oracle flips exactly the winners") {
    const auto spec = single_winner_spec(OracleKind::PhaseFlip, 2, 3, 5);
    const OracleChannel oracle(spec);
    auto layout = action_sequence_layout(2, 3);
    StateVector sv(layout);
    for (std::size_t i = 0; i < 8; ++i) sv.amp(i) = cplx(1.0 / std::sqrt(8.0), 0.0);
    auto flipped = sv;
    oracle.apply_phase(flipped);
    for (std::size_t i = 0; i < 8; ++i) {
        if (i == 5)
            REQUIRE(flipped.amp(i).real() == Catch::Approx(-sv.amp(i).real()));
        else
            REQUIRE(flipped.amp(i) == sv.amp(i));
    }
}

TEST_CASE("bit-flip oracle adds R(x) into the ancilla mod 2") {
    const auto spec = single_winner_spec(OracleKind::BitFlip, 2, 2, 3);
    const OracleChannel oracle(spec);
    auto layout = action_sequence_layout(2, 2);
    layout.push_back({"b", FiniteSpace::plain({"0", "1"})});

    SECTION("winner with ancilla 1 goes to ancilla 0") {
        auto sv = StateVector::basis(layout, {1, 1, 1});
        oracle.apply_bitflip(sv);
        REQUIRE(sv.amp(3 * 2 + 0) == cplx(1.0, 0.0));
    }
    SECTION("loser leaves the ancilla alone") {
        auto sv = StateVector::basis(layout, {0, 1, 1});
        oracle.apply_bitflip(sv);
        REQUIRE(sv.amp(1 * 2 + 1) == cplx(1.0, 0.0));
    }
    SECTION("exhaustive defining equation, M <= 4") {
        for (int m = 1; m <= 4; ++m) {
            const auto sp = single_winner_spec(OracleKind::BitFlip, 2, m,
                                               (std::size_t(1) << m) - 1);
            const OracleChannel orc(sp);
            auto lay = action_sequence_layout(2, m);
            lay.push_back({"b", FiniteSpace::plain({"0", "1"})});
            const std::size_t n = std::size_t(1) << m;
            for (std::size_t x = 0; x < n; ++x) {
                for (int y = 0; y <= 1; ++y) {
                    StateVector sv(lay);
                    sv.amp(2 * x + static_cast<std::size_t>(y)) = 1.0;
                    orc.apply_bitflip(sv);
                    const int fy = (orc.reward_of_index(x) + y) % 2;
                    REQUIRE(sv.amp(2 * x + static_cast<std::size_t>(fy)) == cplx(1.0, 0.0));
                }
            }
        }
    }
}

TEST_CASE("copy oracle appends |R(x)> as an isometry") {
    const auto spec = single_winner_spec(OracleKind::Copy, 2, 2, 2);
    const OracleChannel oracle(spec);
    auto layout = action_sequence_layout(2, 2);
    StateVector sv(layout);
    for (std::size_t i = 0; i < 4; ++i) sv.amp(i) = 0.5;
    const auto out = oracle.apply_copy(sv);
    REQUIRE(out.dim() == 8);
    REQUIRE(out.norm() == Catch::Approx(1.0));
    for (std::size_t x = 0; x < 4; ++x) {
        REQUIRE(out.amp(2 * x + static_cast<std::size_t>(oracle.reward_of_index(x))).real() ==
                Catch::Approx(0.5));
        REQUIRE(std::abs(out.amp(2 * x + static_cast<std::size_t>(1 - oracle.reward_of_index(x)))) ==
                0.0);
    }
}

TEST_CASE("dephasing oracle returns only the classical mixture") {
    const auto spec = single_winner_spec(OracleKind::Dephasing, 2, 2, 1);
    const OracleChannel oracle(spec);
    auto layout = action_sequence_layout(2, 2);

    SECTION("exact channel: diagonal output for superposed input") {
        StateVector sv(layout);
        for (std::size_t i = 0; i < 4; ++i) sv.amp(i) = 0.5;
        const auto rho = DensityOperator::from_state(sv);
        const auto out = oracle.apply_dephasing(rho);
        REQUIRE(out.dim() == 2);
        REQUIRE(std::abs(out.matrix()(0, 1)) <= 1e-12);
        REQUIRE(std::abs(out.matrix()(1, 0)) <= 1e-12);
        REQUIRE(out.matrix()(0, 0).real() == Catch::Approx(0.75));
        REQUIRE(out.matrix()(1, 1).real() == Catch::Approx(0.25));
    }
    SECTION("random inputs keep coherences at zero") {
        RngStream rng(23, 0);
        for (int rep = 0; rep < 100; ++rep) {
            StateVector sv(layout);
            for (std::size_t i = 0; i < 4; ++i)
                sv.amp(i) = cplx(rng.uniform_double() - 0.5, rng.uniform_double() - 0.5);
            sv.normalize();
            const auto out = oracle.apply_dephasing(DensityOperator::from_state(sv));
            REQUIRE(std::abs(out.matrix()(0, 1)) <= 1e-12);
        }
    }
    SECTION("measure-then-apply sampling agrees with the function") {
        RngStream rng(29, 0);
        StateVector sv(layout);
        for (std::size_t i = 0; i < 4; ++i) sv.amp(i) = 0.5;
        int ones = 0;
        const int draws = 20000;
        for (int d = 0; d < draws; ++d) {
            auto copy = sv;
            ones += oracle.sample_dephasing(copy, rng);
        }
        REQUIRE(std::fabs(ones / static_cast<double>(draws) - 0.25) <
                4.0 * std::sqrt(0.25 * 0.75 / draws));
    }
}

TEST_CASE("grover analytics: winner probability equals the rotation formula") {
    for (std::size_t n : {std::size_t(4), std::size_t(16), std::size_t(64), std::size_t(256),
                          std::size_t(1024)}) {
        for (std::size_t w : {std::size_t(1), std::size_t(2), std::size_t(4)}) {
            int m = 0;
            while ((std::size_t(1) << m) < n) ++m;
            std::vector<std::uint8_t> table(n, 0);
            for (std::size_t i = 0; i < w; ++i) table[(i * 7919) % n] = 1;
            const OracleChannel oracle(oracle_from_table(OracleKind::PhaseFlip, 2, m, table));
            StateVector sv(action_sequence_layout(2, m));
            for (std::size_t i = 0; i < n; ++i)
                sv.amp(i) = cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0);
            const std::size_t j = grover_iterations(n, w);
            for (std::size_t it = 0; it < j; ++it) {
                oracle.apply_phase(sv);
                sv.invert_about_mean();
            }
            const double expected = grover_success_probability(n, w, j);
            REQUIRE(std::fabs(winner_probability(sv, oracle) - expected) < 1e-9);
        }
    }
}

TEST_CASE("grover N=4 single winner is exact") {
    const OracleChannel oracle(single_winner_spec(OracleKind::PhaseFlip, 2, 2, 2));
    REQUIRE(grover_iterations(4, 1) == 1);
    StateVector sv(action_sequence_layout(2, 2));
    for (std::size_t i = 0; i < 4; ++i) sv.amp(i) = 0.5;
    oracle.apply_phase(sv);
    sv.invert_about_mean();
    REQUIRE(std::fabs(winner_probability(sv, oracle) - 1.0) < 1e-12);

    RngStream rng(31, 0);
    const auto res = grover_search(oracle, 4, 1, rng);
    REQUIRE(res.succeeded);
    REQUIRE(res.queries == 2);  // one iteration + the verification call
    REQUIRE(res.found == std::vector<int>{1, 0});
}

TEST_CASE("grover N=16 single shot succeeds at the analytic rate") {
    const OracleChannel oracle(single_winner_spec(OracleKind::PhaseFlip, 2, 4, 11));
    REQUIRE(grover_iterations(16, 1) == 3);
    const double analytic = grover_success_probability(16, 1, 3);
    REQUIRE(analytic == Catch::Approx(std::pow(std::sin(7.0 * std::asin(0.25)), 2)));
    REQUIRE(analytic == Catch::Approx(0.9613).margin(2e-4));

    RngStream rng(37, 0);
    int wins = 0;
    const int shots = 100000;
    for (int s = 0; s < shots; ++s) {
        const auto res = grover_search(oracle, 16, 1, rng);
        wins += res.succeeded ? 1 : 0;
    }
    const double se = std::sqrt(analytic * (1.0 - analytic) / shots);
    REQUIRE(std::fabs(wins / static_cast<double>(shots) - analytic) < 4.0 * se);
}

TEST_CASE("grover N=1024 single winner is near certain") {
    REQUIRE(grover_iterations(1024, 1) == 25);
    REQUIRE(grover_success_probability(1024, 1, 25) >= 0.999);
}

TEST_CASE("grover with unknown winner count still finds the target") {
    const OracleChannel oracle(single_winner_spec(OracleKind::PhaseFlip, 2, 5, 19));
    RngStream rng(41, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const auto res = grover_search(oracle, 32, std::nullopt, rng);
        REQUIRE(res.succeeded);
        REQUIRE(res.found == std::vector<int>{1, 0, 0, 1, 1});
    }
    SECTION("no winner exhausts the budget") {
        std::vector<std::uint8_t> empty_table(32, 0);
        const OracleChannel empty(oracle_from_table(OracleKind::PhaseFlip, 2, 5, empty_table));
        REQUIRE_THROWS_AS(grover_search(empty, 32, std::nullopt, rng), NoWinnerExists);
    }
}

TEST_CASE("density operator partial trace and negativity") {
    // Bell-like pair over two dim-2 registers.
    std::vector<RegisterInfo> layout{{"x", FiniteSpace::plain({"0", "1"})},
                                     {"y", FiniteSpace::plain({"0", "1"})}};
    StateVector sv(layout);
    sv.amp(0) = 1.0 / std::sqrt(2.0);
    sv.amp(3) = 1.0 / std::sqrt(2.0);
    const auto rho = DensityOperator::from_state(sv);
    rho.validate();
    REQUIRE(rho.negativity(1) == Catch::Approx(0.5).margin(1e-10));

    const auto marginal = rho.partial_trace_keep({0});
    REQUIRE(marginal.matrix()(0, 0).real() == Catch::Approx(0.5));
    REQUIRE(std::abs(marginal.matrix()(0, 1)) < 1e-12);
    REQUIRE(marginal.negativity(1) == Catch::Approx(0.0).margin(1e-12));

    auto dephased = rho;
    dephased.dephase_register(0);
    REQUIRE(dephased.max_offdiag_on_register(0) <= 1e-12);
    REQUIRE(dephased.negativity(1) == Catch::Approx(0.0).margin(1e-10));
}

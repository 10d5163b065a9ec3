#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/core/rng.hpp"
#include "qrl/qsim/oracle.hpp"
#include "qrl/qsim/state_vector.hpp"

namespace qrl {

struct GroverOptions {
    // Oracle-application budget for the unknown-count schedule; 0 picks a
    // default proportional to sqrt(N).
    std::size_t query_budget = 0;
    double cutoff_growth = 6.0 / 5.0;
};

struct GroverResult {
    std::vector<int> found;     // action digits, empty on failure
    std::size_t queries = 0;    // oracle applications including verification calls
    bool succeeded = false;
};

inline std::size_t grover_iterations(std::size_t num_items, std::size_t num_winners) {
    const double theta = std::asin(std::sqrt(static_cast<double>(num_winners) /
                                             static_cast<double>(num_items)));
    return static_cast<std::size_t>(std::floor((M_PI / 4.0) / theta));
}

// Winner-subspace probability after j iterations, the analytic two-dimensional
// rotation. Used as the oracle for the simulator, never by it.
inline double grover_success_probability(std::size_t num_items, std::size_t num_winners,
                                         std::size_t iterations) {
    const double theta = std::asin(std::sqrt(static_cast<double>(num_winners) /
                                             static_cast<double>(num_items)));
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
    return s * s;
}

namespace detail {

inline StateVector grover_uniform_state(const OracleChannel& oracle) {
    auto layout = action_sequence_layout(oracle.spec().num_actions, oracle.spec().seq_len);
    StateVector sv(layout);
    const double a = 1.0 / std::sqrt(static_cast<double>(sv.dim()));
    for (std::size_t i = 0; i < sv.dim(); ++i) sv.amp(i) = a;
    return sv;
}

inline void grover_iterate(StateVector& sv, const OracleChannel& oracle) {
    oracle.apply_phase(sv);
    sv.invert_about_mean();
}

}  // namespace detail

// One Grover run. With the winner count known the iteration count is fixed
// and the result is a single measure-and-verify shot; with the count unknown
// the exponentially growing random-cutoff schedule is used and the call only
// returns unsuccessfully by exhausting its budget (NoWinnerExists).
inline GroverResult grover_search(const OracleChannel& oracle, std::size_t num_items,
                                  std::optional<std::size_t> num_winners, RngStream& rng,
                                  const GroverOptions& opts = {}) {
    if (oracle.kind() != OracleKind::PhaseFlip)
        throw ConfigError("grover_search requires a phase-flip oracle");
    if (num_items != oracle.num_items())
        throw LayoutMismatch("num_items does not match the oracle");

    GroverResult res;
    const int seq_len = oracle.spec().seq_len;

    auto run_once = [&](std::size_t iterations) {
        StateVector sv = detail::grover_uniform_state(oracle);
        for (std::size_t i = 0; i < iterations; ++i) detail::grover_iterate(sv, oracle);
        const std::size_t x = sv.measure_head(static_cast<std::size_t>(seq_len), rng);
        res.queries += iterations + 1;  // +1 for the classical verification
        if (oracle.reward_of_index(x) == 1) {
            res.succeeded = true;
            std::vector<int> digits(static_cast<std::size_t>(seq_len));
            std::size_t rem = x;
            for (int t = seq_len; t-- > 0;) {
                digits[static_cast<std::size_t>(t)] =
                    static_cast<int>(rem % static_cast<std::size_t>(oracle.spec().num_actions));
                rem /= static_cast<std::size_t>(oracle.spec().num_actions);
            }
            res.found = std::move(digits);
        }
    };

    if (num_winners) {
        if (*num_winners == 0 || *num_winners > num_items)
            throw NoWinnerExists("winner count outside (0, N]");
        run_once(grover_iterations(num_items, *num_winners));
        return res;
    }

    const double sqrt_n = std::sqrt(static_cast<double>(num_items));
    const std::size_t budget = opts.query_budget
                                   ? opts.query_budget
                                   : static_cast<std::size_t>(24.0 * sqrt_n) + 64;
    double cutoff = 1.0;
    while (res.queries < budget) {
        const auto limit = static_cast<std::size_t>(cutoff);
        const std::size_t j = rng.uniform_index(limit);
        run_once(j);
        if (res.succeeded) return res;
        cutoff = std::min(cutoff * opts.cutoff_growth, sqrt_n);
    }
    throw NoWinnerExists("query budget exhausted without a verified winner");
}

}  // namespace qrl

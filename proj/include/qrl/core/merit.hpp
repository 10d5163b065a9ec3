#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "qrl/core/errors.hpp"
#include "qrl/core/history.hpp"

namespace qrl {

// Reward-rate figure of merit over an optional [start, end) entry window.
// Without an explicit window the conventional leading eps percept is not a
// time step, so the default window is [1, len).
struct MeritConfig {
    std::optional<std::pair<std::size_t, std::size_t>> window;
};

inline double rate_merit(const History& h, const MeritConfig& cfg = {}) {
    std::size_t start = 1, end = h.size();
    if (cfg.window) {
        start = cfg.window->first;
        end = cfg.window->second;
        if (start >= end) throw EmptyWindow("window start must precede end");
        if (end > h.size()) throw EmptyWindow("window exceeds history length");
    }
    if (end <= start) throw EmptyWindow("zero entries in window");
    std::size_t rewards = 0;
    for (std::size_t i = start; i < end; ++i) rewards += h[i].reward;
    return static_cast<double>(rewards) / static_cast<double>(end - start);
}

}  // namespace qrl

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/core/history.hpp"
#include "qrl/core/merit.hpp"
#include "qrl/rl/contracts.hpp"

namespace qrl {

// Synchronous turn-based engine. The interaction opens with the environment's
// conventional empty percept (already present in History); `steps` counts the
// agent/environment entries produced after it. The environment is reset to a
// fresh epoch sequence; the agent is taken as-is so that history-conditioned
// agents can be evaluated.
inline History interact(AgentBlackBox& agent, EnvClassical& env, std::size_t steps,
                        RngStream& rng) {
    if (!(agent.percept_space() == env.percept_space()) ||
        !(agent.action_space() == env.action_space()))
        throw SpaceMismatch("agent and environment label spaces disagree");
    env.reset();
    History h;
    Percept last{0, false};
    for (std::size_t s = 0; s < steps; ++s) {
        if (h.entries().back().role == Role::Percept) {
            const int a = agent.act(last, rng);
            h.push_action(a);
        } else {
            last = env.respond(h.entries().back().label, rng);
            h.push_percept(last.label, last.reward);
        }
    }
    return h;
}

struct InteractionStats {
    std::size_t games_played = 0;
    std::size_t steps = 0;  // history entries generated (excluding the leading eps)
    std::optional<std::size_t> first_win_game;  // 1-based
    std::vector<std::pair<std::size_t, double>> rate_trace;  // (steps so far, cumulative rate)
};

// Play whole epochs and record per-game aggregates without materializing the
// history (first-win benchmarks run hundreds of thousands of games).
inline InteractionStats run_games(AgentBlackBox& agent, EnvClassical& env,
                                  std::size_t num_games, RngStream& rng) {
    if (!(agent.percept_space() == env.percept_space()) ||
        !(agent.action_space() == env.action_space()))
        throw SpaceMismatch("agent and environment label spaces disagree");
    env.reset();
    InteractionStats stats;
    const int m = env.epoch_len();
    Percept last{0, false};
    std::size_t rewards = 0;
    for (std::size_t g = 0; g < num_games; ++g) {
        bool won = false;
        for (int t = 0; t < m; ++t) {
            const int a = agent.act(last, rng);
            last = env.respond(a, rng);
            stats.steps += 2;
            if (last.reward) won = true;
        }
        ++stats.games_played;
        if (won) {
            ++rewards;
            if (!stats.first_win_game) stats.first_win_game = g + 1;
        }
        stats.rate_trace.emplace_back(stats.steps,
                                      static_cast<double>(rewards) / static_cast<double>(stats.steps));
    }
    return stats;
}

// Reward rate per entry over an evaluation window of whole games, after an
// untested warm-up window (the sporadic tester's record for a classical run).
inline double windowed_game_rate(AgentBlackBox& agent, EnvClassical& env, std::size_t skip_games,
                                 std::size_t eval_games, RngStream& rng) {
    env.reset();
    const int m = env.epoch_len();
    Percept last{0, false};
    std::size_t rewards = 0;
    for (std::size_t g = 0; g < skip_games + eval_games; ++g) {
        bool won = false;
        for (int t = 0; t < m; ++t) {
            const int a = agent.act(last, rng);
            last = env.respond(a, rng);
            if (last.reward) won = true;
        }
        if (g >= skip_games && won) ++rewards;
    }
    return static_cast<double>(rewards) /
           static_cast<double>(eval_games * 2 * static_cast<std::size_t>(m));
}

}  // namespace qrl

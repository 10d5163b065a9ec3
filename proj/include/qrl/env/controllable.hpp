#pragma once

#include <memory>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/env/maze.hpp"
#include "qrl/qsim/oracle.hpp"

namespace qrl {

// Environment the agent can access either classically or as the phase-flip
// oracle of its reward function. Both views are generated from the same R;
// each oracle call is billed m_max interaction steps.
class ControllableEnv {
  public:
    explicit ControllableEnv(DeterministicEpisodicEnv env,
                             std::size_t dimension_cap = StateVector::kDefaultDimensionCap)
        : classical_(std::move(env)),
          oracle_(make_phase_oracle(classical_, dimension_cap)) {
        // Single-win fixed-time is structural for DeterministicEpisodicEnv;
        // re-check the oracularizable frame anyway so a future env type that
        // violates it fails loudly.
        if (classical_.epoch_len() <= 0 || !classical_.single_win())
            throw NotOracularizable("environment is not single-win fixed-time");
        num_winners_ = oracle_.num_winners();
    }

    DeterministicEpisodicEnv& classical() { return classical_; }
    const DeterministicEpisodicEnv& classical() const { return classical_; }
    const OracleChannel& oracle() const { return oracle_; }

    int m_max() const { return classical_.epoch_len(); }
    std::size_t num_items() const { return oracle_.num_items(); }
    std::size_t num_winners() const { return num_winners_; }
    double winner_fraction() const {
        return static_cast<double>(num_winners_) / static_cast<double>(num_items());
    }

    // Hash of R's truth table; identical across both views by construction,
    // and checkable against a classical-view enumeration.
    std::uint64_t reward_hash() const { return oracle_.table_hash(); }

    std::uint64_t classical_view_reward_hash() const {
        std::uint64_t h = 1469598103934665603ull;
        const int n = classical_.spec().out_degree;
        const int m = classical_.epoch_len();
        std::vector<int> actions(static_cast<std::size_t>(m), 0);
        const std::size_t total = oracle_.num_items();
        for (std::size_t i = 0; i < total; ++i) {
            std::size_t rem = i;
            for (int t = m; t-- > 0;) {
                actions[static_cast<std::size_t>(t)] = static_cast<int>(rem % static_cast<std::size_t>(n));
                rem /= static_cast<std::size_t>(n);
            }
            h ^= static_cast<std::uint64_t>(classical_.reward_of(actions));
            h *= 1099511628211ull;
        }
        return h;
    }

    // Step ledger for the oracle view.
    void bill_oracle_calls(std::size_t calls) { oracle_calls_ += calls; }
    std::size_t oracle_calls() const { return oracle_calls_; }
    std::size_t billed_steps() const {
        return oracle_calls_ * static_cast<std::size_t>(m_max());
    }

  private:
    static OracleChannel make_phase_oracle(const DeterministicEpisodicEnv& env,
                                           std::size_t dimension_cap) {
        OracleSpec spec;
        spec.kind = OracleKind::PhaseFlip;
        spec.num_actions = env.spec().out_degree;
        spec.seq_len = env.epoch_len();
        spec.reward = [&env](const std::vector<int>& a) { return env.reward_of(a); };
        return OracleChannel(std::move(spec), dimension_cap);
    }

    DeterministicEpisodicEnv classical_;
    OracleChannel oracle_;
    std::size_t num_winners_ = 0;
    std::size_t oracle_calls_ = 0;
};

inline ControllableEnv make_controllable(DeterministicEpisodicEnv env) {
    return ControllableEnv(std::move(env));
}

// Quantum extension of a deterministic environment with every map sandwiched
// by a classical-basis measurement of the interface. A member of the wrapped
// env's classical equivalence class that is useless as an oracle: superposed
// action inputs collapse to classical samples.
class DephasedEnvExtension {
  public:
    explicit DephasedEnvExtension(DeterministicEpisodicEnv env) : env_(std::move(env)) {}

    const DeterministicEpisodicEnv& env() const { return env_; }

    struct GameOutcome {
        std::vector<int> actions;   // collapsed action digits
        std::vector<int> percepts;  // percept labels the classical env emits
        bool reward = false;
    };

    // Play one full game with an action-register input state. The interface
    // measurement collapses the input; percepts and reward come from the
    // classical specification on the sampled branch.
    GameOutcome play_game(StateVector& actions_state, RngStream& rng) const {
        const int m = env_.epoch_len();
        GameOutcome out;
        out.actions.reserve(static_cast<std::size_t>(m));
        for (int t = 0; t < m; ++t)
            out.actions.push_back(actions_state.measure(static_cast<std::size_t>(t), rng));
        out.percepts = env_.percepts_of(out.actions);
        out.reward = env_.reward_of(out.actions) == 1;
        return out;
    }

    // Exact view of the same channel: the environment's response to an
    // action-register density operator is a classical mixture over percept
    // sequences (all interface coherences vanish).
    DensityOperator respond_exact(const DensityOperator& rho_actions) const {
        const int m = env_.epoch_len();
        std::vector<RegisterInfo> percept_layout;
        for (int t = 2; t <= m + 1; ++t)
            percept_layout.push_back({"s" + std::to_string(t), env_.percept_space()});
        DensityOperator out(percept_layout);
        const std::size_t total = rho_actions.dim();
        const int n = env_.spec().out_degree;
        for (std::size_t i = 0; i < total; ++i) {
            const double p = rho_actions.matrix()(static_cast<Eigen::Index>(i),
                                                  static_cast<Eigen::Index>(i)).real();
            if (p <= 0.0) continue;
            std::vector<int> actions(static_cast<std::size_t>(m));
            std::size_t rem = i;
            for (int t = m; t-- > 0;) {
                actions[static_cast<std::size_t>(t)] = static_cast<int>(rem % static_cast<std::size_t>(n));
                rem /= static_cast<std::size_t>(n);
            }
            const auto percepts = env_.percepts_of(actions);
            std::size_t idx = 0;
            for (int t = 0; t < m; ++t)
                idx = idx * env_.percept_space().size() + static_cast<std::size_t>(percepts[static_cast<std::size_t>(t)]);
            out.matrix()(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) += p;
        }
        return out;
    }

  private:
    DeterministicEpisodicEnv env_;
};

inline DephasedEnvExtension dephasing_extension(DeterministicEpisodicEnv env) {
    return DephasedEnvExtension(std::move(env));
}

}  // namespace qrl

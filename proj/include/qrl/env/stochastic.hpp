#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/rl/contracts.hpp"

namespace qrl {

// Tabular stochastic environment over fixed-time epochs of t steps. The
// percept at step k is sampled from a conditional row indexed by the full
// within-epoch prefix (a_1..a_k, s_2..s_k); the reward predicate is evaluated
// on the complete epoch and flagged on the final percept.
class StochasticEnv : public EnvClassical {
  public:
    using RewardPredicate = std::function<int(const std::vector<int>&, const std::vector<int>&)>;

    // tables[k] holds rows for step k (0-based): row index is the mixed-radix
    // encoding of (a_1..a_{k+1}) base n then (s_2..s_{k+1}) base m; each row
    // is a distribution over the m raw percepts.
    StochasticEnv(int num_actions, int num_raw_percepts, int epoch_steps,
                  std::vector<std::vector<std::vector<double>>> tables, RewardPredicate reward)
        : n_(num_actions), m_(num_raw_percepts), t_(epoch_steps),
          tables_(std::move(tables)), reward_(std::move(reward)) {
        if (tables_.size() != static_cast<std::size_t>(t_))
            throw ConfigError("need one table per epoch step");
        for (int k = 0; k < t_; ++k) {
            std::size_t rows = 1;
            for (int i = 0; i <= k; ++i) rows *= static_cast<std::size_t>(n_);
            for (int i = 0; i < k; ++i) rows *= static_cast<std::size_t>(m_);
            if (tables_[static_cast<std::size_t>(k)].size() != rows)
                throw ConfigError("table row count mismatch at step " + std::to_string(k));
            for (const auto& row : tables_[static_cast<std::size_t>(k)]) {
                if (row.size() != static_cast<std::size_t>(m_))
                    throw BadDistribution("row width != percept count");
                double s = 0.0;
                for (double p : row) {
                    if (p < 0.0) throw BadDistribution("negative probability");
                    s += p;
                }
                if (std::fabs(s - 1.0) > 1e-12) throw BadDistribution("row does not sum to 1");
            }
        }
        std::vector<std::string> labels;
        for (int s = 0; s < m_; ++s) labels.push_back("s" + std::to_string(s));
        percepts_ = FiniteSpace::with_empty(std::move(labels));
        actions_ = make_action_space(n_);
        reset();
    }

    void reset() override {
        epoch_actions_.clear();
        epoch_percepts_.clear();
    }

    Percept respond(int action, RngStream& rng) override {
        if (action < 0 || action >= n_) throw SpaceMismatch("action out of range");
        epoch_actions_.push_back(action);
        const int k = static_cast<int>(epoch_actions_.size()) - 1;
        const auto& row = tables_[static_cast<std::size_t>(k)][row_index(k)];
        const double u = rng.uniform_double();
        double acc = 0.0;
        int s = m_ - 1;
        for (int i = 0; i < m_; ++i) {
            acc += row[static_cast<std::size_t>(i)];
            if (u < acc) {
                s = i;
                break;
            }
        }
        epoch_percepts_.push_back(s);
        bool rewarded = false;
        if (static_cast<int>(epoch_actions_.size()) == t_) {
            rewarded = reward_(epoch_actions_, epoch_percepts_) != 0;
            epoch_actions_.clear();
            epoch_percepts_.clear();
        }
        return Percept{static_cast<std::int32_t>(1 + s), rewarded};
    }

    const FiniteSpace& percept_space() const override { return percepts_; }
    const FiniteSpace& action_space() const override { return actions_; }
    int epoch_len() const override { return t_; }

    std::unique_ptr<EnvClassical> clone() const override {
        return std::make_unique<StochasticEnv>(*this);
    }

    int num_actions() const { return n_; }
    int num_raw_percepts() const { return m_; }

    // Exact epoch-level quantities, used for oracle construction and oracles'
    // brute-force counterparts.
    double prob_sequence(const std::vector<int>& actions, const std::vector<int>& percepts) const {
        if (actions.size() != static_cast<std::size_t>(t_) ||
            percepts.size() != static_cast<std::size_t>(t_))
            throw LengthMismatch("sequence length != epoch steps");
        double p = 1.0;
        for (int k = 0; k < t_; ++k) {
            std::size_t idx = 0;
            for (int i = 0; i <= k; ++i)
                idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(actions[static_cast<std::size_t>(i)]);
            for (int i = 0; i < k; ++i)
                idx = idx * static_cast<std::size_t>(m_) + static_cast<std::size_t>(percepts[static_cast<std::size_t>(i)]);
            p *= tables_[static_cast<std::size_t>(k)][idx][static_cast<std::size_t>(percepts[static_cast<std::size_t>(k)])];
        }
        return p;
    }

    int reward_of_sequences(const std::vector<int>& actions, const std::vector<int>& percepts) const {
        return reward_(actions, percepts);
    }

  private:
    std::size_t row_index(int k) const {
        std::size_t idx = 0;
        for (int i = 0; i <= k; ++i)
            idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(epoch_actions_[static_cast<std::size_t>(i)]);
        for (int i = 0; i < k; ++i)
            idx = idx * static_cast<std::size_t>(m_) + static_cast<std::size_t>(epoch_percepts_[static_cast<std::size_t>(i)]);
        return idx;
    }

    int n_, m_, t_;
    std::vector<std::vector<std::vector<double>>> tables_;
    RewardPredicate reward_;
    FiniteSpace percepts_;
    FiniteSpace actions_;
    std::vector<int> epoch_actions_;
    std::vector<int> epoch_percepts_;
};

inline StochasticEnv make_stochastic_env(int num_actions, int num_raw_percepts, int epoch_steps,
                                         std::vector<std::vector<std::vector<double>>> tables,
                                         StochasticEnv::RewardPredicate reward) {
    return StochasticEnv(num_actions, num_raw_percepts, epoch_steps, std::move(tables),
                         std::move(reward));
}

}  // namespace qrl

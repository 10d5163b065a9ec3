#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/rl/contracts.hpp"

namespace qrl {

// Minimal projective-simulation-style learner: one weight per
// (percept, action) pair, actions sampled proportionally to weight. A
// rewarded epoch bumps the weights along its (percept, action) pairs by
// `glow`; every epoch end relaxes all weights toward their initial value 1
// by the damping fraction.
class PsLiteAgent : public AgentBlackBox {
  public:
    PsLiteAgent(FiniteSpace percepts, FiniteSpace actions, int epoch_len, double glow,
                double damping)
        : percepts_(std::move(percepts)), actions_(std::move(actions)),
          epoch_len_(epoch_len), glow_(glow), damping_(damping) {
        if (epoch_len_ <= 0) throw BadHyperparameter("epoch length must be positive");
        if (!(glow_ > 0.0)) throw BadHyperparameter("glow must be positive");
        if (damping_ < 0.0 || damping_ >= 1.0) throw BadHyperparameter("damping must be in [0,1)");
    }

    void reset() override {
        weights_.clear();
        epoch_pairs_.clear();
    }

    int act(const Percept& percept, RngStream& rng) override {
        if (static_cast<int>(epoch_pairs_.size()) == epoch_len_) finish_epoch(percept.reward);
        auto& ws = row(percept.label);
        double total = 0.0;
        for (double w : ws) total += w;
        const double u = rng.uniform_double() * total;
        double acc = 0.0;
        int a = static_cast<int>(ws.size()) - 1;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            acc += ws[i];
            if (u < acc) {
                a = static_cast<int>(i);
                break;
            }
        }
        epoch_pairs_.emplace_back(percept.label, a);
        return a;
    }

    std::unique_ptr<AgentBlackBox> clone() const override {
        return std::make_unique<PsLiteAgent>(*this);
    }

    const FiniteSpace& percept_space() const override { return percepts_; }
    const FiniteSpace& action_space() const override { return actions_; }

    double weight(std::int32_t percept_label, int action) const {
        auto it = weights_.find(percept_label);
        if (it == weights_.end()) return 1.0;
        return it->second[static_cast<std::size_t>(action)];
    }

    // Probability of emitting `action` on `percept_label` right now.
    double policy(std::int32_t percept_label, int action) const {
        auto it = weights_.find(percept_label);
        if (it == weights_.end()) return 1.0 / static_cast<double>(actions_.size());
        double total = 0.0;
        for (double w : it->second) total += w;
        return it->second[static_cast<std::size_t>(action)] / total;
    }

  private:
    std::vector<double>& row(std::int32_t percept_label) {
        auto it = weights_.find(percept_label);
        if (it == weights_.end())
            it = weights_.emplace(percept_label, std::vector<double>(actions_.size(), 1.0)).first;
        return it->second;
    }

    void finish_epoch(bool rewarded) {
        if (rewarded)
            for (const auto& [p, a] : epoch_pairs_) row(p)[static_cast<std::size_t>(a)] += glow_;
        if (damping_ > 0.0)
            for (auto& [p, ws] : weights_)
                for (double& w : ws) w -= damping_ * (w - 1.0);
        epoch_pairs_.clear();
    }

    FiniteSpace percepts_;
    FiniteSpace actions_;
    int epoch_len_;
    double glow_;
    double damping_;
    std::unordered_map<std::int32_t, std::vector<double>> weights_;
    std::vector<std::pair<std::int32_t, int>> epoch_pairs_;
};

inline std::unique_ptr<AgentBlackBox> ps_lite_agent(const FiniteSpace& percepts,
                                                    const FiniteSpace& actions, int epoch_len,
                                                    double glow, double damping) {
    return std::make_unique<PsLiteAgent>(percepts, actions, epoch_len, glow, damping);
}

}  // namespace qrl

#pragma once

#include <memory>
#include <unordered_set>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/rl/contracts.hpp"

namespace qrl {

// Reference agent that walks uniformly at random until the first reward, then
// deterministically re-produces the rewarded epoch's action sequence forever.
// The optional without-replacement mode never re-tries an unrewarded sequence
// (the optimal-case explorer behind the classical win-probability bound).
class RurAgent : public AgentBlackBox {
  public:
    RurAgent(FiniteSpace percepts, FiniteSpace actions, int epoch_len,
             bool without_replacement = false)
        : percepts_(std::move(percepts)), actions_(std::move(actions)),
          epoch_len_(epoch_len), without_replacement_(without_replacement) {
        if (epoch_len_ <= 0) throw BadHyperparameter("epoch length must be positive");
        if (without_replacement_ && epoch_len_ * bits_per_action() > 40)
            throw BadHyperparameter("without-replacement mode needs a small sequence space");
    }

    void reset() override {
        won_ = false;
        epoch_actions_.clear();
        replay_.clear();
        planned_.clear();
        tried_.clear();
    }

    int act(const Percept& percept, RngStream& rng) override {
        const int n = static_cast<int>(actions_.size());
        if (static_cast<int>(epoch_actions_.size()) == epoch_len_) {
            // `percept` is the final percept of the epoch just completed.
            if (percept.reward && !won_) {
                won_ = true;
                replay_ = epoch_actions_;
            }
            if (without_replacement_ && !won_) tried_.insert(encode(epoch_actions_));
            epoch_actions_.clear();
            planned_.clear();
        }
        int a;
        if (won_) {
            a = replay_[epoch_actions_.size()];
        } else if (without_replacement_) {
            if (planned_.empty()) plan_untried_sequence(rng);
            a = planned_[epoch_actions_.size()];
        } else {
            a = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
        }
        epoch_actions_.push_back(a);
        return a;
    }

    std::unique_ptr<AgentBlackBox> clone() const override {
        return std::make_unique<RurAgent>(*this);
    }

    const FiniteSpace& percept_space() const override { return percepts_; }
    const FiniteSpace& action_space() const override { return actions_; }

    bool has_won() const { return won_; }

  private:
    int bits_per_action() const {
        int b = 0;
        while ((std::size_t(1) << b) < actions_.size()) ++b;
        return b == 0 ? 1 : b;
    }

    std::size_t encode(const std::vector<int>& seq) const {
        std::size_t idx = 0;
        for (int a : seq) idx = idx * actions_.size() + static_cast<std::size_t>(a);
        return idx;
    }

    void plan_untried_sequence(RngStream& rng) {
        const std::size_t n = actions_.size();
        std::size_t total = 1;
        for (int i = 0; i < epoch_len_; ++i) total *= n;
        planned_.assign(static_cast<std::size_t>(epoch_len_), 0);
        std::size_t idx = rng.uniform_index(total);
        if (tried_.size() < total) {
            while (tried_.count(idx)) idx = rng.uniform_index(total);
        }
        for (int t = epoch_len_; t-- > 0;) {
            planned_[static_cast<std::size_t>(t)] = static_cast<int>(idx % n);
            idx /= n;
        }
    }

    FiniteSpace percepts_;
    FiniteSpace actions_;
    int epoch_len_;
    bool without_replacement_;
    bool won_ = false;
    std::vector<int> epoch_actions_;
    std::vector<int> replay_;
    std::vector<int> planned_;
    std::unordered_set<std::size_t> tried_;
};

inline std::unique_ptr<AgentBlackBox> rur_agent(const FiniteSpace& percepts,
                                                const FiniteSpace& actions, int epoch_len,
                                                bool without_replacement = false) {
    return std::make_unique<RurAgent>(percepts, actions, epoch_len, without_replacement);
}

}  // namespace qrl

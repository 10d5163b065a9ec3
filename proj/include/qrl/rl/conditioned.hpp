#pragma once

#include <memory>
#include <optional>

#include "qrl/core/errors.hpp"
#include "qrl/core/history.hpp"
#include "qrl/rl/contracts.hpp"

namespace qrl {

// A(h): the agent conditioned on having undergone history h. When h ends in a
// percept, that percept has been received but not yet acted on, so it is the
// context of the agent's next move; the wrapper delivers it on the first act
// of the continuing interaction (replacing the fresh engine's leading eps).
class ConditionedAgent : public AgentBlackBox {
  public:
    ConditionedAgent(std::unique_ptr<AgentBlackBox> sim, std::optional<Percept> pending)
        : sim_(std::move(sim)), snapshot_(sim_->clone()), pending_(pending) {}

    void reset() override {
        sim_ = snapshot_->clone();
        delivered_ = false;
    }

    int act(const Percept& percept, RngStream& rng) override {
        if (pending_ && !delivered_) {
            delivered_ = true;
            return sim_->act(*pending_, rng);
        }
        return sim_->act(percept, rng);
    }

    std::unique_ptr<AgentBlackBox> clone() const override {
        auto c = std::make_unique<ConditionedAgent>(sim_->clone(), pending_);
        c->delivered_ = delivered_;
        return c;
    }

    const FiniteSpace& percept_space() const override { return sim_->percept_space(); }
    const FiniteSpace& action_space() const override { return sim_->action_space(); }

  private:
    std::unique_ptr<AgentBlackBox> sim_;
    std::unique_ptr<AgentBlackBox> snapshot_;
    std::optional<Percept> pending_;
    bool delivered_ = false;
};

namespace detail {

// Reset-and-post-select replay: feed h's percepts, keep only runs where the
// agent reproduces h's actions exactly and contiguously. Returns nullptr once
// the reset budget is spent.
inline std::unique_ptr<AgentBlackBox> try_condition_on_history(const AgentBlackBox& proto,
                                                               const History& h, RngStream& rng,
                                                               std::size_t retry_budget) {
    std::size_t resets = 0;
    auto agent = proto.clone();
    agent->reset();
    while (true) {
        bool ok = true;
        Percept context{0, false};
        for (std::size_t i = 0; i < h.size() && ok; ++i) {
            const auto& e = h[i];
            if (e.role == Role::Percept) {
                context = Percept{e.label, e.reward != 0};
                continue;
            }
            if (agent->act(context, rng) != e.label) ok = false;
        }
        if (ok) {
            std::optional<Percept> pending;
            if (h.size() > 1 && h[h.size() - 1].role == Role::Percept)
                pending = Percept{h[h.size() - 1].label, h[h.size() - 1].reward != 0};
            return std::make_unique<ConditionedAgent>(std::move(agent), pending);
        }
        if (++resets > retry_budget) return nullptr;
        agent->reset();
    }
}

}  // namespace detail

inline std::unique_ptr<AgentBlackBox> instantiate_from_history(const AgentBlackBox& proto,
                                                               const History& h, RngStream& rng,
                                                               std::size_t retry_budget = 1000000) {
    auto agent = detail::try_condition_on_history(proto, h, rng, retry_budget);
    if (!agent) throw UnrealizableHistory("post-selection failed within the retry budget");
    return agent;
}

}  // namespace qrl

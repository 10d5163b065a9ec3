#pragma once

#include <cstdint>
#include <memory>

#include "qrl/core/finite_space.hpp"
#include "qrl/core/rng.hpp"

namespace qrl {

// A percept as the agent receives it: a raw label index into the percept
// space (0 is the empty symbol) plus the binary reward flag.
struct Percept {
    std::int32_t label = 0;
    bool reward = false;
};

// Opaque classical learning agent. The contract is reset / act; the agent
// observes its own actions implicitly and must draw randomness only from the
// stream it is handed.
class AgentBlackBox {
  public:
    virtual ~AgentBlackBox() = default;

    // Restore the initial configuration; afterwards behavior must be
    // distribution-identical to a freshly constructed agent.
    virtual void reset() = 0;

    // Consume a percept, emit an action index.
    virtual int act(const Percept& percept, RngStream& rng) = 0;

    virtual std::unique_ptr<AgentBlackBox> clone() const = 0;

    virtual const FiniteSpace& percept_space() const = 0;
    virtual const FiniteSpace& action_space() const = 0;
};

// Classical task environment: reset starts a new epoch sequence, respond maps
// an action to the next percept. Episodic environments reset themselves every
// epoch_len() actions regardless of outcome.
class EnvClassical {
  public:
    virtual ~EnvClassical() = default;

    virtual void reset() = 0;
    virtual Percept respond(int action, RngStream& rng) = 0;

    virtual const FiniteSpace& percept_space() const = 0;
    virtual const FiniteSpace& action_space() const = 0;

    virtual int epoch_len() const = 0;
    virtual bool single_win() const { return true; }

    virtual std::unique_ptr<EnvClassical> clone() const = 0;
};

}  // namespace qrl

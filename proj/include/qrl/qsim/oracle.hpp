#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/qsim/density_operator.hpp"
#include "qrl/qsim/state_vector.hpp"

namespace qrl {

enum class OracleKind { BitFlip, PhaseFlip, Copy, Dephasing };

// Binary reward function over action sequences of fixed length, given either
// as a callable or as an explicit truth table over the mixed-radix index.
struct OracleSpec {
    OracleKind kind = OracleKind::PhaseFlip;
    int num_actions = 2;
    int seq_len = 1;
    std::function<int(const std::vector<int>&)> reward;

    std::size_t num_items() const {
        std::size_t n = 1;
        for (int i = 0; i < seq_len; ++i) n *= static_cast<std::size_t>(num_actions);
        return n;
    }
};

inline OracleSpec oracle_from_table(OracleKind kind, int num_actions, int seq_len,
                                    std::vector<std::uint8_t> table) {
    OracleSpec spec;
    spec.kind = kind;
    spec.num_actions = num_actions;
    spec.seq_len = seq_len;
    if (table.size() != spec.num_items()) throw LengthMismatch("truth table size != n^M");
    spec.reward = [table = std::move(table), num_actions, seq_len](const std::vector<int>& a) {
        std::size_t idx = 0;
        for (int t = 0; t < seq_len; ++t) idx = idx * num_actions + static_cast<std::size_t>(a[t]);
        return static_cast<int>(table[idx]);
    };
    return spec;
}

// One of the four oracle flavors, materialized over its reward table.
class OracleChannel {
  public:
    explicit OracleChannel(OracleSpec spec,
                           std::size_t dimension_cap = StateVector::kDefaultDimensionCap)
        : spec_(std::move(spec)) {
        if (!spec_.reward) throw ConfigError("oracle spec lacks a reward function");
        const std::size_t n = spec_.num_items();
        if (n > dimension_cap) throw DimensionCap("oracle truth table exceeds dimension cap");
        table_.resize(n);
        std::vector<int> digits(static_cast<std::size_t>(spec_.seq_len), 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t rem = i;
            for (int t = spec_.seq_len; t-- > 0;) {
                digits[static_cast<std::size_t>(t)] = static_cast<int>(rem % spec_.num_actions);
                rem /= static_cast<std::size_t>(spec_.num_actions);
            }
            table_[i] = static_cast<std::uint8_t>(spec_.reward(digits) ? 1 : 0);
        }
    }

    const OracleSpec& spec() const { return spec_; }
    OracleKind kind() const { return spec_.kind; }
    std::size_t num_items() const { return table_.size(); }

    int reward_of_index(std::size_t sequence_index) const {
        return static_cast<int>(table_[sequence_index]);
    }

    int reward_of(const std::vector<int>& actions) const {
        std::size_t idx = 0;
        for (int t = 0; t < spec_.seq_len; ++t)
            idx = idx * static_cast<std::size_t>(spec_.num_actions) +
                  static_cast<std::size_t>(actions[static_cast<std::size_t>(t)]);
        return reward_of_index(idx);
    }

    std::size_t num_winners() const {
        std::size_t w = 0;
        for (auto b : table_) w += b;
        return w;
    }

    std::uint64_t table_hash() const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (auto b : table_) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return h;
    }

    // Phase flip: |x> -> (-1)^R(x) |x>, applied over the leading action block
    // of `sv` (any tail registers ride along unchanged).
    void apply_phase(StateVector& sv) const {
        require_action_head(sv);
        sv.apply_head_phase(static_cast<std::size_t>(spec_.seq_len),
                            [this](std::size_t h) { return table_[h] ? -1 : 1; });
    }

    // Bit flip: |x>|y> -> |x>|R(x) xor y> with a dim-2 ancilla as the last register.
    void apply_bitflip(StateVector& sv) const {
        require_action_head(sv);
        if (sv.num_registers() != static_cast<std::size_t>(spec_.seq_len) + 1 ||
            sv.reg(sv.num_registers() - 1).dim() != 2)
            throw LayoutMismatch("bit-flip oracle expects action registers plus one qubit ancilla");
        auto& amps = sv.amplitudes();
        for (std::size_t h = 0; h < table_.size(); ++h) {
            if (!table_[h]) continue;
            std::swap(amps[2 * h], amps[2 * h + 1]);
        }
    }

    // Copy isometry: |x> -> |x>|R(x)>, appending a fresh qubit register.
    StateVector apply_copy(const StateVector& sv) const {
        require_action_head(sv);
        if (sv.num_registers() != static_cast<std::size_t>(spec_.seq_len))
            throw LayoutMismatch("copy oracle expects exactly the action registers");
        auto layout = sv.layout();
        layout.push_back({"f", FiniteSpace::plain({"0", "1"})});
        StateVector out(layout);
        for (std::size_t h = 0; h < table_.size(); ++h)
            out.amp(2 * h + table_[h]) = sv.amp(h);
        return out;
    }

    // The fully dephasing flavor: a channel, not a unitary. Exact form maps a
    // density operator over the action block to the classical mixture of
    // reward bits; the sampling form measures, then reads the function.
    DensityOperator apply_dephasing(const DensityOperator& rho) const {
        if (rho.dim() != table_.size())
            throw LayoutMismatch("dephasing oracle dimension mismatch");
        DensityOperator out({{"f", FiniteSpace::plain({"0", "1"})}});
        double p1 = 0.0;
        for (std::size_t i = 0; i < table_.size(); ++i)
            if (table_[i]) p1 += rho.matrix()(static_cast<Eigen::Index>(i),
                                              static_cast<Eigen::Index>(i)).real();
        out.matrix()(0, 0) = 1.0 - p1;
        out.matrix()(1, 1) = p1;
        return out;
    }

    int sample_dephasing(StateVector& sv, RngStream& rng) const {
        require_action_head(sv);
        const std::size_t x = sv.measure_head(static_cast<std::size_t>(spec_.seq_len), rng);
        return static_cast<int>(table_[x]);
    }

  private:
    void require_action_head(const StateVector& sv) const {
        if (sv.num_registers() < static_cast<std::size_t>(spec_.seq_len))
            throw LayoutMismatch("state has fewer registers than the action sequence");
        for (int t = 0; t < spec_.seq_len; ++t)
            if (sv.reg(static_cast<std::size_t>(t)).dim() !=
                static_cast<std::size_t>(spec_.num_actions))
                throw LayoutMismatch("leading registers are not the action block");
    }

    OracleSpec spec_;
    std::vector<std::uint8_t> table_;
};

inline OracleChannel build_oracle(const OracleSpec& spec,
                                  std::size_t dimension_cap = StateVector::kDefaultDimensionCap) {
    return OracleChannel(spec, dimension_cap);
}

}  // namespace qrl

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/env/stochastic.hpp"
#include "qrl/qsim/grover.hpp"
#include "qrl/qsim/oracle.hpp"
#include "qrl/qsim/state_vector.hpp"

namespace qrl {

// Oracle set for amplitude amplification over a stochastic epoch: the raw
// percept unitary U_S' (percepts delivered as mirrored purifications), the
// diagonal reward reflector, and the initial-state reflectors built from
// them. Register layout: t action registers, then t percept registers, then
// t mirror registers; percept registers carry the empty symbol at digit 0 as
// the fiducial slot value.
class StochasticOracleSet {
  public:
    explicit StochasticOracleSet(const StochasticEnv& env,
                                 std::size_t dimension_cap = StateVector::kDefaultDimensionCap)
        : n_(env.num_actions()), m_(env.num_raw_percepts()), t_(env.epoch_len()) {
        num_action_seqs_ = ipow(n_, t_);
        num_real_seqs_ = ipow(m_, t_);
        pair_dim_ = ipow(m_ + 1, 2 * t_);
        percept_block_dim_ = ipow(m_ + 1, t_);

        const FiniteSpace aspace = make_action_space(n_);
        for (int k = 1; k <= t_; ++k) layout_.push_back({"a" + std::to_string(k), aspace});
        for (int k = 2; k <= t_ + 1; ++k)
            layout_.push_back({"s" + std::to_string(k), env.percept_space()});
        for (int k = 2; k <= t_ + 1; ++k)
            layout_.push_back({"s" + std::to_string(k) + "'", env.percept_space()});
        {
            StateVector probe(layout_, dimension_cap);  // enforces the cap
        }

        // Conditional amplitudes and rewards per (action seq, real percept seq).
        prob_.assign(num_action_seqs_, std::vector<double>(num_real_seqs_, 0.0));
        reward_.assign(num_action_seqs_, std::vector<std::uint8_t>(num_real_seqs_, 0));
        for (std::size_t a = 0; a < num_action_seqs_; ++a) {
            const auto actions = decode_base(a, n_, t_);
            for (std::size_t s = 0; s < num_real_seqs_; ++s) {
                const auto percepts = decode_base(s, m_, t_);
                prob_[a][s] = env.prob_sequence(actions, percepts);
                reward_[a][s] =
                    static_cast<std::uint8_t>(env.reward_of_sequences(actions, percepts) ? 1 : 0);
            }
        }
        build_blocks();
    }

    const std::vector<RegisterInfo>& layout() const { return layout_; }
    int num_actions() const { return n_; }
    int epoch_steps() const { return t_; }
    std::size_t num_action_seqs() const { return num_action_seqs_; }

    // |psi_init> = sum_{a,s} sqrt(P(s|a)/n^t) |a>|s>|s>.
    StateVector initial_state() const {
        StateVector sv(layout_);
        const double wa = 1.0 / std::sqrt(static_cast<double>(num_action_seqs_));
        for (std::size_t a = 0; a < num_action_seqs_; ++a)
            for (std::size_t s = 0; s < num_real_seqs_; ++s)
                if (prob_[a][s] > 0.0)
                    sv.amp(global_index(a, s)) = wa * std::sqrt(prob_[a][s]);
        return sv;
    }

    // |psi_tar> ~ sum_{R=1} sqrt(P'(s,a)) |a>|s>|s>, normalized.
    StateVector target_state() const {
        StateVector sv(layout_);
        const double wa = 1.0 / std::sqrt(static_cast<double>(num_action_seqs_));
        bool any = false;
        for (std::size_t a = 0; a < num_action_seqs_; ++a)
            for (std::size_t s = 0; s < num_real_seqs_; ++s)
                if (reward_[a][s] && prob_[a][s] > 0.0) {
                    sv.amp(global_index(a, s)) = wa * std::sqrt(prob_[a][s]);
                    any = true;
                }
        if (!any) throw ZeroNorm("no rewarded sequences: target state is empty");
        sv.normalize();
        return sv;
    }

    // Brute-force action-sequence distribution of the exact target state:
    // P(a) = sum_s P'(s,a | R=1).
    std::vector<double> brute_force_target_action_distribution() const {
        std::vector<double> p(num_action_seqs_, 0.0);
        double total = 0.0;
        const double wa = 1.0 / static_cast<double>(num_action_seqs_);
        for (std::size_t a = 0; a < num_action_seqs_; ++a)
            for (std::size_t s = 0; s < num_real_seqs_; ++s)
                if (reward_[a][s]) {
                    p[a] += prob_[a][s] * wa;
                    total += prob_[a][s] * wa;
                }
        if (total <= 0.0) throw ZeroNorm("no rewarded sequences");
        for (auto& x : p) x /= total;
        return p;
    }

    // U_S': |a>|eps..eps>|eps..eps> -> |a> sum_s sqrt(P(s|a)) |s>|s>, completed
    // to a unitary, block diagonal over the action basis.
    void apply_raw_percept(StateVector& sv) const { apply_blocks(sv, false); }
    void apply_raw_percept_adjoint(StateVector& sv) const { apply_blocks(sv, true); }

    // U_R: diagonal (-1)^{R(a,s)} on the mirrored real-percept basis.
    void apply_reward_reflector(StateVector& sv) const {
        check_layout(sv);
        for (std::size_t a = 0; a < num_action_seqs_; ++a) {
            const std::size_t base = a * pair_dim_;
            for (std::size_t s = 0; s < num_real_seqs_; ++s) {
                if (!reward_[a][s]) continue;
                const std::size_t idx = base + pair_index(s);
                sv.amp(idx) = -sv.amp(idx);
            }
        }
    }

    // The composed reflector U'_init: U_S' ((1 - 2|phi><phi|) x 1) U_S'^dagger.
    // Agrees with 1 - 2|psi_init><psi_init| on the busy subspace
    // span{ U_S' |a>|eps..eps> }.
    void apply_init_reflector(StateVector& sv) const {
        apply_raw_percept_adjoint(sv);
        reflect_actions_about_uniform(sv);
        apply_raw_percept(sv);
    }

    // Exact reflection 1 - 2|psi_init><psi_init|, the A S_0 A^dagger form with
    // the rank-1 fiducial reflection; completion-independent, and the one that
    // keeps the amplitude-amplification walk inside its two-dimensional plane.
    void apply_exact_init_reflector(StateVector& sv) const {
        sv.reflect_about(initial_state());
    }

    // (1 - 2|phi><phi|) x 1 on the action block.
    void reflect_actions_about_uniform(StateVector& sv) const {
        check_layout(sv);
        const double inv = 2.0 / static_cast<double>(num_action_seqs_);
        for (std::size_t tail = 0; tail < pair_dim_; ++tail) {
            cplx sum(0.0, 0.0);
            for (std::size_t a = 0; a < num_action_seqs_; ++a) sum += sv.amp(a * pair_dim_ + tail);
            const cplx delta = inv * sum;
            for (std::size_t a = 0; a < num_action_seqs_; ++a) {
                auto& x = sv.amp(a * pair_dim_ + tail);
                x = x - delta;
            }
        }
    }

    std::size_t pair_index(std::size_t real_seq) const {
        // Mirrored (s, s) with percept digits shifted by one for the eps slot.
        std::size_t p = 0;
        auto digits = decode_base(real_seq, m_, t_);
        for (int k = 0; k < t_; ++k)
            p = p * static_cast<std::size_t>(m_ + 1) + static_cast<std::size_t>(digits[static_cast<std::size_t>(k)] + 1);
        return p * percept_block_dim_ + p;
    }

    std::size_t global_index(std::size_t action_seq, std::size_t real_seq) const {
        return action_seq * pair_dim_ + pair_index(real_seq);
    }

    double conditional_prob(std::size_t action_seq, std::size_t real_seq) const {
        return prob_[action_seq][real_seq];
    }
    int reward_flag(std::size_t action_seq, std::size_t real_seq) const {
        return reward_[action_seq][real_seq];
    }

    static std::vector<int> decode_base(std::size_t idx, int base, int len) {
        std::vector<int> d(static_cast<std::size_t>(len));
        for (int k = len; k-- > 0;) {
            d[static_cast<std::size_t>(k)] = static_cast<int>(idx % static_cast<std::size_t>(base));
            idx /= static_cast<std::size_t>(base);
        }
        return d;
    }

  private:
    static std::size_t ipow(int b, int e) {
        std::size_t r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(b);
        return r;
    }

    void check_layout(const StateVector& sv) const {
        if (sv.dim() != num_action_seqs_ * pair_dim_)
            throw LayoutMismatch("state does not match the oracle layout");
    }

    // Per-action unitary on the percept-pair space: identity everywhere except
    // a small block over {eps-pair} u {mirrored support of P(.|a)}. The
    // fiducial column holds xi_a; the remaining block columns come from
    // Gram-Schmidt over the support basis vectors in basis order, with the
    // displaced fiducial direction taking the final dependent slot.
    struct Block {
        std::vector<std::size_t> indices;            // global pair indices, ascending
        std::vector<std::vector<cplx>> cols;         // cols[c][r] over block coords
    };

    void build_blocks() {
        blocks_.clear();
        blocks_.reserve(num_action_seqs_);
        for (std::size_t a = 0; a < num_action_seqs_; ++a) {
            Block blk;
            std::vector<std::pair<std::size_t, double>> support;  // (pair index, amplitude)
            for (std::size_t s = 0; s < num_real_seqs_; ++s)
                if (prob_[a][s] > 0.0) support.emplace_back(pair_index(s), std::sqrt(prob_[a][s]));
            std::sort(support.begin(), support.end());
            blk.indices.push_back(0);  // eps-pair sits at global pair index 0
            for (const auto& [idx, amp] : support) blk.indices.push_back(idx);

            const std::size_t b = blk.indices.size();
            std::vector<std::vector<cplx>> cols(b, std::vector<cplx>(b, cplx(0, 0)));
            // slot 0: xi_a in block coordinates
            for (std::size_t i = 0; i < support.size(); ++i) cols[0][i + 1] = support[i].second;
            // candidates: support basis vectors in order, then the eps direction
            std::vector<std::vector<cplx>> cands;
            for (std::size_t i = 0; i < support.size(); ++i) {
                std::vector<cplx> e(b, cplx(0, 0));
                e[i + 1] = 1.0;
                cands.push_back(std::move(e));
            }
            {
                std::vector<cplx> e(b, cplx(0, 0));
                e[0] = 1.0;
                cands.push_back(std::move(e));
            }
            std::size_t slot = 1;
            for (auto& cand : cands) {
                if (slot >= b) break;
                for (std::size_t c = 0; c < slot; ++c) {
                    cplx ov(0, 0);
                    for (std::size_t r = 0; r < b; ++r) ov += std::conj(cols[c][r]) * cand[r];
                    for (std::size_t r = 0; r < b; ++r) cand[r] -= ov * cols[c][r];
                }
                double nrm = 0.0;
                for (const auto& x : cand) nrm += std::norm(x);
                nrm = std::sqrt(nrm);
                if (nrm < 1e-12) continue;  // dependent candidate, skip
                for (auto& x : cand) x /= nrm;
                cols[slot++] = std::move(cand);
            }
            if (slot != b) throw LayoutMismatch("unitary completion failed to span the block");
            blk.cols = std::move(cols);
            blocks_.push_back(std::move(blk));
        }
    }

    void apply_blocks(StateVector& sv, bool adjoint) const {
        check_layout(sv);
        std::vector<cplx> in, out;
        for (std::size_t a = 0; a < num_action_seqs_; ++a) {
            const Block& blk = blocks_[a];
            const std::size_t b = blk.indices.size();
            in.assign(b, cplx(0, 0));
            out.assign(b, cplx(0, 0));
            const std::size_t base = a * pair_dim_;
            for (std::size_t i = 0; i < b; ++i) in[i] = sv.amp(base + blk.indices[i]);
            for (std::size_t c = 0; c < b; ++c) {
                for (std::size_t r = 0; r < b; ++r) {
                    if (adjoint)
                        out[c] += std::conj(blk.cols[c][r]) * in[r];  // row of U^dagger
                    else
                        out[r] += blk.cols[c][r] * in[c];
                }
            }
            for (std::size_t i = 0; i < b; ++i) sv.amp(base + blk.indices[i]) = out[i];
        }
    }

    int n_, m_, t_;
    std::size_t num_action_seqs_ = 0, num_real_seqs_ = 0;
    std::size_t pair_dim_ = 0, percept_block_dim_ = 0;
    std::vector<RegisterInfo> layout_;
    std::vector<std::vector<double>> prob_;
    std::vector<std::vector<std::uint8_t>> reward_;
    std::vector<Block> blocks_;
};

// Alternating reflections: state <- refl_init(refl_tar(state)), iterated.
template <typename ReflInit, typename ReflTar>
StateVector qaa(StateVector state, ReflInit&& refl_init, ReflTar&& refl_tar,
                std::size_t iterations) {
    for (std::size_t i = 0; i < iterations; ++i) {
        refl_tar(state);
        refl_init(state);
    }
    return state;
}

// Squared overlap with the target after l iterations of exact reflections:
// the two-dimensional rotation sin^2((2l+1) theta), theta = asin(|<init|tar>|).
inline double qaa_analytic_fidelity(double initial_overlap, std::size_t iterations) {
    const double theta = std::asin(initial_overlap);
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
    return s * s;
}

struct MaxRewardResult {
    std::size_t best_threshold = 0;
    std::optional<std::vector<int>> witness;
    std::size_t probes = 0;
};

// Binary search for the largest threshold theta such that some action
// sequence reaches cumulative reward >= theta, probing each candidate with
// one unknown-count Grover run against family(theta).
template <typename OracleFamily>
MaxRewardResult max_reward_search(OracleFamily&& family, std::size_t reward_bound, RngStream& rng,
                                  const GroverOptions& opts = {}) {
    MaxRewardResult res;
    std::size_t lo = 0, hi = reward_bound + 1;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const OracleChannel oracle = family(mid);
        ++res.probes;
        bool found = false;
        std::vector<int> cand;
        try {
            const auto r = grover_search(oracle, oracle.num_items(), std::nullopt, rng, opts);
            found = r.succeeded;
            cand = r.found;
        } catch (const NoWinnerExists&) {
            found = false;
        }
        if (found) {
            lo = mid;
            res.witness = cand;
        } else {
            hi = mid;
        }
    }
    res.best_threshold = lo;
    if (lo == 0) res.witness.reset();
    return res;
}

}  // namespace qrl

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/core/finite_space.hpp"
#include "qrl/core/rng.hpp"

namespace qrl {

using cplx = std::complex<double>;

struct RegisterInfo {
    std::string name;
    FiniteSpace space;

    std::size_t dim() const { return space.size(); }
};

// Dense state vector over labeled finite registers. Basis order is mixed
// radix with register 0 most significant. Everything here is a value type;
// operations mutate in place and callers copy when they need the original.
class StateVector {
  public:
    static constexpr std::size_t kDefaultDimensionCap = std::size_t(1) << 22;

    explicit StateVector(std::vector<RegisterInfo> layout,
                         std::size_t dimension_cap = kDefaultDimensionCap)
        : regs_(std::move(layout)) {
        std::size_t d = 1;
        strides_.resize(regs_.size());
        for (std::size_t r = regs_.size(); r-- > 0;) {
            strides_[r] = d;
            if (regs_[r].dim() == 0) throw LayoutMismatch("empty register: " + regs_[r].name);
            if (d > dimension_cap / regs_[r].dim())
                throw DimensionCap("state dimension exceeds cap");
            d *= regs_[r].dim();
        }
        amp_.assign(d, cplx(0.0, 0.0));
    }

    static StateVector basis(std::vector<RegisterInfo> layout, const std::vector<int>& values,
                             std::size_t dimension_cap = kDefaultDimensionCap) {
        StateVector sv(std::move(layout), dimension_cap);
        sv.amp_[sv.encode(values)] = cplx(1.0, 0.0);
        return sv;
    }

    std::size_t dim() const { return amp_.size(); }
    std::size_t num_registers() const { return regs_.size(); }
    const RegisterInfo& reg(std::size_t r) const { return regs_[r]; }
    const std::vector<RegisterInfo>& layout() const { return regs_; }
    std::size_t stride(std::size_t r) const { return strides_[r]; }

    std::size_t register_index(std::string_view name) const {
        for (std::size_t r = 0; r < regs_.size(); ++r)
            if (regs_[r].name == name) return r;
        throw UnknownRegister(std::string(name));
    }

    cplx& amp(std::size_t i) { return amp_[i]; }
    const cplx& amp(std::size_t i) const { return amp_[i]; }
    std::vector<cplx>& amplitudes() { return amp_; }
    const std::vector<cplx>& amplitudes() const { return amp_; }

    std::size_t encode(const std::vector<int>& values) const {
        if (values.size() != regs_.size()) throw LayoutMismatch("value count != register count");
        std::size_t i = 0;
        for (std::size_t r = 0; r < regs_.size(); ++r) {
            if (values[r] < 0 || static_cast<std::size_t>(values[r]) >= regs_[r].dim())
                throw LayoutMismatch("value out of range for register " + regs_[r].name);
            i += static_cast<std::size_t>(values[r]) * strides_[r];
        }
        return i;
    }

    int digit(std::size_t index, std::size_t r) const {
        return static_cast<int>((index / strides_[r]) % regs_[r].dim());
    }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

    void normalize() {
        const double n = norm();
        if (n < 1e-14) throw ZeroNorm("cannot normalize near-zero state");
        for (auto& a : amp_) a /= n;
    }

    cplx inner(const StateVector& other) const {
        if (other.dim() != dim()) throw LayoutMismatch("inner product dimension mismatch");
        cplx s(0.0, 0.0);
        for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
        return s;
    }

    double fidelity(const StateVector& other) const { return std::norm(inner(other)); }

    // Product of the dimensions of the first `head_regs` registers.
    std::size_t head_dim(std::size_t head_regs) const {
        std::size_t d = 1;
        for (std::size_t r = 0; r < head_regs; ++r) d *= regs_[r].dim();
        return d;
    }

    // Uniform superposition over the leading block, basis values on the rest.
    static StateVector uniform_block(std::vector<RegisterInfo> layout, std::size_t head_regs,
                                     const std::vector<int>& tail_values,
                                     std::size_t dimension_cap = kDefaultDimensionCap) {
        StateVector sv(std::move(layout), dimension_cap);
        const std::size_t head = sv.head_dim(head_regs);
        const std::size_t tail = sv.dim() / head;
        std::size_t tail_index = 0;
        for (std::size_t r = head_regs; r < sv.num_registers(); ++r) {
            tail_index = tail_index * sv.regs_[r].dim() +
                         static_cast<std::size_t>(tail_values.at(r - head_regs));
        }
        const double a = 1.0 / std::sqrt(static_cast<double>(head));
        for (std::size_t h = 0; h < head; ++h) sv.amp_[h * tail + tail_index] = a;
        return sv;
    }

    // Diagonal +-1 phase by leading-block index.
    template <typename SignFn>
    void apply_head_phase(std::size_t head_regs, SignFn&& sign) {
        const std::size_t head = head_dim(head_regs);
        const std::size_t tail = dim() / head;
        for (std::size_t h = 0; h < head; ++h) {
            if (sign(h) < 0) {
                const std::size_t base = h * tail;
                for (std::size_t t = 0; t < tail; ++t) amp_[base + t] = -amp_[base + t];
            }
        }
    }

    // Reflection 2|u><u| - 1 about the uniform state (inversion about the mean).
    void invert_about_mean() {
        cplx mean(0.0, 0.0);
        for (const auto& a : amp_) mean += a;
        mean /= static_cast<double>(amp_.size());
        for (auto& a : amp_) a = 2.0 * mean - a;
    }

    // Reflection 1 - 2|about><about|.
    void reflect_about(const StateVector& about) {
        const cplx ov = about.inner(*this);
        for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= 2.0 * ov * about.amp_[i];
    }

    // Joint outcome distribution of the leading block.
    std::vector<double> head_marginal_probs(std::size_t head_regs) const {
        const std::size_t head = head_dim(head_regs);
        const std::size_t tail = dim() / head;
        std::vector<double> p(head, 0.0);
        for (std::size_t h = 0; h < head; ++h)
            for (std::size_t t = 0; t < tail; ++t) p[h] += std::norm(amp_[h * tail + t]);
        return p;
    }

    std::vector<double> marginal_probs(std::size_t r) const {
        std::vector<double> p(regs_[r].dim(), 0.0);
        for (std::size_t i = 0; i < amp_.size(); ++i)
            p[static_cast<std::size_t>(digit(i, r))] += std::norm(amp_[i]);
        return p;
    }

    // Born-rule measurement of one register; collapses and renormalizes.
    int measure(std::size_t r, RngStream& rng) {
        const auto p = marginal_probs(r);
        const double u = rng.uniform_double();
        double acc = 0.0;
        int outcome = static_cast<int>(p.size()) - 1;
        for (std::size_t k = 0; k < p.size(); ++k) {
            acc += p[k];
            if (u < acc) {
                outcome = static_cast<int>(k);
                break;
            }
        }
        if (p[static_cast<std::size_t>(outcome)] < 1e-14)
            throw ZeroNorm("conditional state has near-zero norm");
        for (std::size_t i = 0; i < amp_.size(); ++i)
            if (digit(i, r) != outcome) amp_[i] = 0.0;
        normalize();
        return outcome;
    }

    int measure(std::string_view register_name, RngStream& rng) {
        return measure(register_index(register_name), rng);
    }

    // Measure the leading block as a whole; returns the composite index.
    std::size_t measure_head(std::size_t head_regs, RngStream& rng) {
        const std::size_t head = head_dim(head_regs);
        const std::size_t tail = dim() / head;
        std::vector<double> p(head, 0.0);
        for (std::size_t h = 0; h < head; ++h) {
            double s = 0.0;
            for (std::size_t t = 0; t < tail; ++t) s += std::norm(amp_[h * tail + t]);
            p[h] = s;
        }
        const double u = rng.uniform_double();
        double acc = 0.0;
        std::size_t outcome = head - 1;
        for (std::size_t h = 0; h < head; ++h) {
            acc += p[h];
            if (u < acc) {
                outcome = h;
                break;
            }
        }
        if (p[outcome] < 1e-14) throw ZeroNorm("conditional state has near-zero norm");
        for (std::size_t h = 0; h < head; ++h)
            if (h != outcome)
                for (std::size_t t = 0; t < tail; ++t) amp_[h * tail + t] = 0.0;
        normalize();
        return outcome;
    }

    // Purity tr(rho_head^2) of the leading-block marginal, via its Gram matrix.
    double head_purity(std::size_t head_regs) const {
        const std::size_t head = head_dim(head_regs);
        const std::size_t tail = dim() / head;
        double purity = 0.0;
        for (std::size_t a = 0; a < head; ++a) {
            for (std::size_t b = 0; b < head; ++b) {
                cplx g(0.0, 0.0);
                for (std::size_t t = 0; t < tail; ++t)
                    g += std::conj(amp_[a * tail + t]) * amp_[b * tail + t];
                purity += std::norm(g);
            }
        }
        return purity;
    }

    std::vector<int> decode(std::size_t index) const {
        std::vector<int> v(regs_.size());
        for (std::size_t r = 0; r < regs_.size(); ++r) v[r] = digit(index, r);
        return v;
    }

  private:
    std::vector<RegisterInfo> regs_;
    std::vector<std::size_t> strides_;
    std::vector<cplx> amp_;
};

// M identical action registers named a1..aM.
inline std::vector<RegisterInfo> action_sequence_layout(int num_actions, int seq_len) {
    const FiniteSpace space = make_action_space(num_actions);
    std::vector<RegisterInfo> layout;
    layout.reserve(static_cast<std::size_t>(seq_len));
    for (int t = 1; t <= seq_len; ++t)
        layout.push_back({"a" + std::to_string(t), space});
    return layout;
}

}  // namespace qrl

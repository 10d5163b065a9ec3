#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qrl/core/errors.hpp"
#include "qrl/qsim/state_vector.hpp"

namespace qrl {

// Dense density operator over the same labeled-register layouts as
// StateVector. Meant for small interfaces (testers, lemma scenarios), so
// everything is an explicit Eigen matrix.
class DensityOperator {
  public:
    explicit DensityOperator(std::vector<RegisterInfo> layout)
        : regs_(std::move(layout)) {
        std::size_t d = 1;
        strides_.resize(regs_.size());
        for (std::size_t r = regs_.size(); r-- > 0;) {
            strides_[r] = d;
            d *= regs_[r].dim();
        }
        if (d > kDimCap) throw ScenarioTooLarge("density operator dimension over cap");
        m_ = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    }

    static DensityOperator from_state(const StateVector& sv) {
        DensityOperator rho(sv.layout());
        const auto d = static_cast<Eigen::Index>(sv.dim());
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                rho.m_(i, j) = sv.amp(static_cast<std::size_t>(i)) *
                               std::conj(sv.amp(static_cast<std::size_t>(j)));
        return rho;
    }

    static DensityOperator basis(std::vector<RegisterInfo> layout, const std::vector<int>& values) {
        return from_state(StateVector::basis(std::move(layout), values));
    }

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const std::vector<RegisterInfo>& layout() const { return regs_; }
    Eigen::MatrixXcd& matrix() { return m_; }
    const Eigen::MatrixXcd& matrix() const { return m_; }

    int digit(std::size_t index, std::size_t r) const {
        return static_cast<int>((index / strides_[r]) % regs_[r].dim());
    }

    double trace_real() const { return m_.trace().real(); }

    void validate(double tol_herm = 1e-10, double tol_trace = 1e-10, double tol_psd = 1e-8) const {
        if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol_herm)
            throw LayoutMismatch("density operator not Hermitian");
        if (std::fabs(m_.trace().real() - 1.0) > tol_trace || std::fabs(m_.trace().imag()) > tol_trace)
            throw LayoutMismatch("density operator trace != 1");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol_psd)
            throw LayoutMismatch("density operator not positive semidefinite");
    }

    // rho -> sum_k K_k rho K_k^dagger, with Kraus operators over the full space.
    void apply_kraus(const std::vector<Eigen::MatrixXcd>& kraus) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m_.rows(), m_.cols());
        for (const auto& k : kraus) out += k * m_ * k.adjoint();
        m_ = std::move(out);
    }

    void apply_unitary(const Eigen::MatrixXcd& u) { m_ = u * m_ * u.adjoint(); }

    // Classical-basis dephasing of one register: zero every element whose
    // row and column digits differ on that register.
    void dephase_register(std::size_t r) {
        const auto d = m_.rows();
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                if (digit(static_cast<std::size_t>(i), r) != digit(static_cast<std::size_t>(j), r))
                    m_(i, j) = cplx(0.0, 0.0);
    }

    // Largest |element| between distinct classical values of register r.
    double max_offdiag_on_register(std::size_t r) const {
        double mx = 0.0;
        const auto d = m_.rows();
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                if (digit(static_cast<std::size_t>(i), r) != digit(static_cast<std::size_t>(j), r))
                    mx = std::max(mx, std::abs(m_(i, j)));
        return mx;
    }

    DensityOperator partial_trace_keep(const std::vector<std::size_t>& keep) const {
        std::vector<RegisterInfo> kept;
        for (auto r : keep) kept.push_back(regs_[r]);
        DensityOperator out(kept);
        const std::size_t d = dim();
        std::vector<char> is_kept(regs_.size(), 0);
        for (auto r : keep) is_kept[r] = 1;
        auto project = [&](std::size_t idx, bool kept_part) {
            std::size_t v = 0;
            if (kept_part) {
                for (auto r : keep) v = v * regs_[r].dim() + static_cast<std::size_t>(digit(idx, r));
            } else {
                for (std::size_t r = 0; r < regs_.size(); ++r)
                    if (!is_kept[r]) v = v * regs_[r].dim() + static_cast<std::size_t>(digit(idx, r));
            }
            return v;
        };
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                if (project(i, false) != project(j, false)) continue;
                out.m_(static_cast<Eigen::Index>(project(i, true)),
                       static_cast<Eigen::Index>(project(j, true))) +=
                    m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
        return out;
    }

    // Trace distance (1/2)||rho - sigma||_1.
    double trace_distance(const DensityOperator& other) const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_ - other.m_, Eigen::EigenvaluesOnly);
        return 0.5 * es.eigenvalues().cwiseAbs().sum();
    }

    // Negativity across the cut (first head_regs) | (rest): partial transpose
    // on the tail block, then the magnitude sum of negative eigenvalues.
    double negativity(std::size_t head_regs) const {
        std::size_t head = 1, tail = 1;
        for (std::size_t r = 0; r < regs_.size(); ++r)
            (r < head_regs ? head : tail) *= regs_[r].dim();
        Eigen::MatrixXcd pt(m_.rows(), m_.cols());
        for (std::size_t a = 0; a < head; ++a)
            for (std::size_t b = 0; b < tail; ++b)
                for (std::size_t a2 = 0; a2 < head; ++a2)
                    for (std::size_t b2 = 0; b2 < tail; ++b2)
                        pt(static_cast<Eigen::Index>(a * tail + b),
                           static_cast<Eigen::Index>(a2 * tail + b2)) =
                            m_(static_cast<Eigen::Index>(a * tail + b2),
                               static_cast<Eigen::Index>(a2 * tail + b));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
        double neg = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            if (es.eigenvalues()[i] < 0.0) neg -= es.eigenvalues()[i];
        return neg;
    }

    double purity() const { return (m_ * m_).trace().real(); }

  private:
    static constexpr std::size_t kDimCap = 1 << 12;

    std::vector<RegisterInfo> regs_;
    std::vector<std::size_t> strides_;
    Eigen::MatrixXcd m_;
};

}  // namespace qrl

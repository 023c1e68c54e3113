#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "qmc/types.hpp"

namespace qmc {

namespace detail {

// tau * (largest |value|, or 1 for an all-zero spectrum).
template <typename Real>
Real relative_cutoff(const RealVector<Real>& values, Real tau) {
  const Real scale = values.size() ? values.cwiseAbs().maxCoeff() : Real(0);
  return tau * (scale > 0 ? scale : Real(1));
}

}  // namespace detail

/// Eigenpairs of a Hermitian matrix, eigenvalues sorted in descending order.
template <typename Real>
struct HermitianEig {
  RealVector<Real> values;
  Matrix<Real> vectors;  // orthonormal columns
};

template <typename Real>
HermitianEig<Real> hermitian_eig(const std::type_identity_t<Matrix<Real>>& a,
                                 const Tolerances<Real>& tol = {}) {
  detail::require(a.rows() == a.cols(), "hermitian_eig: matrix is not square");
  detail::require(detail::hermiticity_defect<Real>(a) <= tol.herm * std::max(Real(1), a.norm()),
                  "hermitian_eig: matrix is not Hermitian");
  const Matrix<Real> h = (a + a.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(h);
  detail::require(es.info() == Eigen::Success, "hermitian_eig: eigensolver failed");
  const Eigen::Index n = a.rows();
  HermitianEig<Real> out{RealVector<Real>(n), Matrix<Real>(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = es.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return out;
}

template <typename Real>
struct PositiveSplit {
  Matrix<Real> plus;
  Matrix<Real> minus;
};

/// a = plus - minus with plus, minus >= 0 and orthogonal supports.
/// Eigenvalues within cutoff_scale * tau_rank * max|lambda| of zero are dropped.
template <typename Real>
PositiveSplit<Real> positive_part_split(const std::type_identity_t<Matrix<Real>>& a,
                                        const Tolerances<Real>& tol = {}, Real cutoff_scale = Real(1)) {
  const auto eig = hermitian_eig<Real>(a, tol);
  const Real cut = cutoff_scale * detail::relative_cutoff(eig.values, tol.rank);
  const Eigen::Index n = a.rows();
  PositiveSplit<Real> out{Matrix<Real>::Zero(n, n), Matrix<Real>::Zero(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Real lambda = eig.values(k);
    const auto v = eig.vectors.col(k);
    if (lambda > cut)
      out.plus += lambda * v * v.adjoint();
    else if (lambda < -cut)
      out.minus -= lambda * v * v.adjoint();
  }
  return out;
}

/// A validated partial density operator: Hermitian, positive semidefinite,
/// 0 < trace <= 1 (within tolerances).
template <typename Real>
class DensityOperator {
 public:
  explicit DensityOperator(const Matrix<Real>& m, const Tolerances<Real>& tol = {}) {
    detail::require(m.rows() == m.cols() && m.rows() > 0, "density operator must be a non-empty square matrix");
    detail::require(detail::all_finite(m), "density operator has non-finite entries");
    const auto eig = hermitian_eig<Real>(m, tol);
    detail::require(eig.values.minCoeff() >= -tol.psd, "density operator is not positive semidefinite");
    const Real tr = m.trace().real();
    detail::require(tr > 0 && tr <= 1 + tol.trace, "density operator trace must lie in (0, 1]");
    rho_ = (m + m.adjoint()) / Real(2);
  }

  /// |psi><psi| for a normalized vector.
  static DensityOperator pure(const Vector<Real>& psi, const Tolerances<Real>& tol = {}) {
    return DensityOperator(psi * psi.adjoint(), tol);
  }

  static DensityOperator maximally_mixed(Eigen::Index n) {
    return DensityOperator(identity<Real>(n) / Real(n));
  }

  const Matrix<Real>& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  Real trace() const { return rho_.trace().real(); }

 private:
  Matrix<Real> rho_;
};

/// A completely positive map in Kraus form, rho -> sum_i E_i rho E_i^dag,
/// together with its cached matrix representation M = sum_i E_i kron conj(E_i).
///
/// Trace-preserving channels satisfy sum_i E_i^dag E_i = I; sub-channels
/// (projected or restricted maps built internally) only need <= I.
template <typename Real>
class Channel {
 public:
  explicit Channel(std::vector<Matrix<Real>> kraus, bool trace_preserving = true,
                   const Tolerances<Real>& tol = {})
      : kraus_(std::move(kraus)), trace_preserving_(trace_preserving) {
    detail::require(!kraus_.empty(), "channel needs at least one Kraus operator");
    const Eigen::Index n = kraus_.front().rows();
    detail::require(n > 0, "channel dimension must be positive");
    Matrix<Real> sum = Matrix<Real>::Zero(n, n);
    for (const auto& e : kraus_) {
      detail::require(e.rows() == n && e.cols() == n, "Kraus operators must all be n x n");
      detail::require(detail::all_finite(e), "Kraus operator has non-finite entries");
      sum += e.adjoint() * e;
    }
    if (trace_preserving_) {
      const Real defect = (sum - identity<Real>(n)).norm();
      detail::require(defect <= tol.tp, "sum_i E_i^dag E_i != I (Frobenius defect " + std::to_string(defect) + ")");
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix<Real>> es((sum + sum.adjoint()) / Real(2), Eigen::EigenvaluesOnly);
      detail::require(es.eigenvalues().maxCoeff() <= 1 + tol.tp, "sum_i E_i^dag E_i exceeds I");
    }
    rep_ = Matrix<Real>::Zero(n * n, n * n);
    for (const auto& e : kraus_) rep_ += kron<Real>(e, e.conjugate());
  }

  Eigen::Index dim() const { return kraus_.front().rows(); }
  const std::vector<Matrix<Real>>& kraus() const { return kraus_; }
  const Matrix<Real>& rep() const { return rep_; }
  bool trace_preserving() const { return trace_preserving_; }

  static Channel identity_channel(Eigen::Index n) { return Channel({identity<Real>(n)}); }

 private:
  template <typename R>
  friend Channel<R> compose(const Channel<R>&, const Channel<R>&);

  Channel(std::vector<Matrix<Real>> kraus, Matrix<Real> rep, bool tp)
      : kraus_(std::move(kraus)), rep_(std::move(rep)), trace_preserving_(tp) {}

  std::vector<Matrix<Real>> kraus_;
  Matrix<Real> rep_;
  bool trace_preserving_;
};

template <typename Real>
Matrix<Real> apply(const Channel<Real>& channel, const std::type_identity_t<Matrix<Real>>& rho) {
  detail::require(rho.rows() == channel.dim() && rho.cols() == channel.dim(), "apply: dimension mismatch");
  Matrix<Real> out = Matrix<Real>::Zero(channel.dim(), channel.dim());
  for (const auto& e : channel.kraus()) out.noalias() += e * rho * e.adjoint();
  return out;
}

template <typename Real>
Matrix<Real> apply(const Channel<Real>& channel, const DensityOperator<Real>& rho) {
  return qmc::apply(channel, rho.matrix());
}

/// Heisenberg-picture dual, a -> sum_i E_i^dag a E_i.
template <typename Real>
Matrix<Real> dual_apply(const Channel<Real>& channel, const std::type_identity_t<Matrix<Real>>& a) {
  detail::require(a.rows() == channel.dim() && a.cols() == channel.dim(), "dual_apply: dimension mismatch");
  Matrix<Real> out = Matrix<Real>::Zero(channel.dim(), channel.dim());
  for (const auto& e : channel.kraus()) out.noalias() += e.adjoint() * a * e;
  return out;
}

template <typename Real>
const Matrix<Real>& matrix_representation(const Channel<Real>& channel) {
  return channel.rep();
}

/// outer after inner. The result is trace-preserving iff both factors are.
template <typename Real>
Channel<Real> compose(const Channel<Real>& outer, const Channel<Real>& inner) {
  detail::require(outer.dim() == inner.dim(), "compose: dimension mismatch");
  std::vector<Matrix<Real>> kraus;
  kraus.reserve(outer.kraus().size() * inner.kraus().size());
  for (const auto& o : outer.kraus())
    for (const auto& i : inner.kraus()) kraus.push_back(o * i);
  return Channel<Real>(std::move(kraus), outer.rep() * inner.rep(),
                       outer.trace_preserving() && inner.trace_preserving());
}

/// rho -> P rho P for an orthogonal projector P.
template <typename Real>
Channel<Real> projection_channel(const std::type_identity_t<Matrix<Real>>& projector) {
  return Channel<Real>({projector}, false);
}

}  // namespace qmc

#pragma once

#include <optional>
#include <vector>

#include "qmc/spaces.hpp"

namespace qmc {

/// Orthonormal basis (columns) of the numerical null space of a square matrix:
/// right singular vectors whose singular value is <= tau * max(1, sigma_max).
template <typename Real>
Matrix<Real> null_space(const std::type_identity_t<Matrix<Real>>& a, Real tau) {
  detail::require(a.rows() == a.cols(), "null_space: matrix is not square");
  auto kernel = [&](const auto& svd) -> std::optional<Matrix<Real>> {
    const auto& sigma = svd.singularValues();
    if (!detail::all_finite(sigma) || !detail::all_finite(svd.matrixV())) return std::nullopt;
    const Real cut = tau * std::max(Real(1), sigma.size() ? sigma(0) : Real(0));
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cut) ++rank;
    Matrix<Real> v = svd.matrixV().rightCols(a.cols() - rank);
    if (v.cols() && (a * v).colwise().norm().maxCoeff() > 10 * cut) return std::nullopt;
    return v;
  };
  // BDCSVD can emit NaN vectors for exactly-zero singular values (Eigen 3.4).
  if (auto v = kernel(Eigen::BDCSVD<Matrix<Real>>(a, Eigen::ComputeFullV))) return *v;
  auto v = kernel(Eigen::JacobiSVD<Matrix<Real>>(a, Eigen::ComputeFullV));
  detail::require(v.has_value(), "null_space: singular value decomposition failed");
  return *v;
}

/// Linearly independent trace-one fixed points spanning {A : E(A) = A}.
template <typename Real>
struct FixedPointBasis {
  std::vector<DensityOperator<Real>> elements;
  Eigen::Index dimension_of_fixed_space = 0;  // complex dimension

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
};

namespace detail {

// Greedy earliest-index independent subset under the complex inner product on vec().
template <typename Real>
std::vector<std::size_t> independent_subset(const std::vector<Matrix<Real>>& mats, Real tau) {
  std::vector<Vector<Real>> accepted;
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    Vector<Real> v = vec<Real>(mats[k]);
    const Real scale = v.norm();
    // Two Gram-Schmidt sweeps for orthogonality in floating point.
    for (int sweep = 0; sweep < 2; ++sweep)
      for (const auto& q : accepted) v -= q.dot(v) * q;
    if (v.norm() > tau * scale) {
      accepted.push_back(v.normalized());
      kept.push_back(k);
    }
  }
  return kept;
}

}  // namespace detail

/// Density-operator basis of the fixed points of a (sub-)channel:
/// null space of M - I, reshaped, split into Hermitian parts, then into
/// positive and negative parts, each normalized to unit trace and pruned to a
/// linearly independent set. Empty iff zero is the only fixed point.
template <typename Real>
FixedPointBasis<Real> fixed_point_basis(const Channel<Real>& channel, const Tolerances<Real>& tol = {}) {
  const Eigen::Index n = channel.dim();
  const Matrix<Real>& m = channel.rep();
  const Matrix<Real> kernel = null_space<Real>(m - identity<Real>(n * n), tol.eig);

  std::vector<Matrix<Real>> candidates;
  const Complex<Real> two_i(0, 2);
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
    const Matrix<Real> a = unvec<Real>(kernel.col(k), n);
    const Real scale = a.norm();
    for (const Matrix<Real>& h : {Matrix<Real>((a + a.adjoint()) / Real(2)), Matrix<Real>((a - a.adjoint()) / two_i)}) {
      if (h.norm() <= tol.rank * scale) continue;
      const auto split = positive_part_split<Real>(h, tol);
      for (const Matrix<Real>* part : {&split.plus, &split.minus}) {
        const Real tr = part->trace().real();
        if (tr > 0) candidates.push_back(*part / tr);
      }
    }
  }

  FixedPointBasis<Real> out;
  out.dimension_of_fixed_space = kernel.cols();
  for (std::size_t k : detail::independent_subset(candidates, tol.rank))
    out.elements.emplace_back(candidates[k], tol);
  detail::require(static_cast<Eigen::Index>(out.elements.size()) == kernel.cols(),
                  "fixed_point_basis: Hermitian parts do not span the fixed space");
  return out;
}

/// Matrix representation of the asymptotic average lim (1/N) sum_{k=1..N} E^k,
/// i.e. the spectral projector of M onto its eigenvalue-1 eigenspace.
template <typename Real>
class AsymptoticAverage {
 public:
  AsymptoticAverage(Channel<Real> source, Matrix<Real> m_infty)
      : source_(std::move(source)), m_infty_(std::move(m_infty)) {}

  const Channel<Real>& source() const { return source_; }
  const Matrix<Real>& m_infty() const { return m_infty_; }
  Eigen::Index dim() const { return source_.dim(); }

 private:
  Channel<Real> source_;
  Matrix<Real> m_infty_;
};

/// m_infty = R (L^dag R)^{-1} L^dag with R, L the right and left null spaces
/// of M - I. Power-bounded maps (any trace non-increasing channel) have a
/// semisimple eigenvalue 1, so this equals the Cesaro limit.
template <typename Real>
AsymptoticAverage<Real> asymptotic_average(const Channel<Real>& channel, const Tolerances<Real>& tol = {}) {
  const Eigen::Index n2 = channel.dim() * channel.dim();
  const Matrix<Real> shifted = channel.rep() - identity<Real>(n2);
  const Matrix<Real> right = null_space<Real>(shifted, tol.eig);
  const Matrix<Real> left = null_space<Real>(shifted.adjoint(), tol.eig);
  detail::require(right.cols() == left.cols(), "asymptotic_average: left and right eigenvalue-1 spaces differ in dimension");
  if (right.cols() == 0) return AsymptoticAverage<Real>(channel, Matrix<Real>::Zero(n2, n2));

  const Matrix<Real> overlap = left.adjoint() * right;
  Eigen::JacobiSVD<Matrix<Real>> svd(overlap);
  const auto& sigma = svd.singularValues();
  detail::require(sigma(sigma.size() - 1) >= tol.eig * sigma(0),
                  "asymptotic_average: eigenvalue-1 cluster is numerically defective");
  Matrix<Real> m_infty = right * overlap.partialPivLu().solve(left.adjoint());
  return AsymptoticAverage<Real>(channel, std::move(m_infty));
}

template <typename Real>
Matrix<Real> apply_average(const AsymptoticAverage<Real>& avg, const std::type_identity_t<Matrix<Real>>& x) {
  detail::require(x.rows() == avg.dim() && x.cols() == avg.dim(), "apply_average: dimension mismatch");
  return unvec<Real>(avg.m_infty() * vec<Real>(x), avg.dim());
}

/// E_inf(rho); Hermitian by construction, re-symmetrized against round-off.
template <typename Real>
Matrix<Real> apply_average(const AsymptoticAverage<Real>& avg, const DensityOperator<Real>& rho) {
  const Matrix<Real> out = apply_average(avg, rho.matrix());
  return (out + out.adjoint()) / Real(2);
}

/// E_inf(g) = supp(E_inf(P_g / dim g)); the zero subspace maps to itself.
template <typename Real>
Subspace<Real> average_image(const AsymptoticAverage<Real>& avg, const Subspace<Real>& g,
                             const Tolerances<Real>& tol = {}) {
  detail::require(g.ambient_dim() == avg.dim(), "average_image: dimension mismatch");
  if (g.is_zero()) return g;
  Matrix<Real> out = apply_average(avg, Matrix<Real>(g.projector() / Real(g.dim())));
  out = (out + out.adjoint()) / Real(2);
  return support<Real>(out, tol);
}

}  // namespace qmc

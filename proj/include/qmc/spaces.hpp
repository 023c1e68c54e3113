#pragma once

#include <vector>

#include "qmc/operators.hpp"

namespace qmc {

/// A subspace of C^n held as an orthonormal basis (columns) plus its cached
/// orthogonal projector. Zero columns means the zero subspace.
template <typename Real>
class Subspace {
 public:
  static Subspace zero(Eigen::Index n) { return Subspace(Matrix<Real>(n, 0)); }
  static Subspace full(Eigen::Index n) { return Subspace(identity<Real>(n)); }

  /// Orthonormalized span of arbitrary (possibly dependent) columns.
  static Subspace span(const std::type_identity_t<Matrix<Real>>& columns, const Tolerances<Real>& tol = {});

  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix<Real>& basis() const { return basis_; }
  const Matrix<Real>& projector() const { return projector_; }

 private:
  explicit Subspace(Matrix<Real> basis) : basis_(std::move(basis)), projector_(basis_ * basis_.adjoint()) {}

  Matrix<Real> basis_;
  Matrix<Real> projector_;
};

template <typename Real>
Subspace<Real> Subspace<Real>::span(const std::type_identity_t<Matrix<Real>>& columns, const Tolerances<Real>& tol) {
  const Eigen::Index n = columns.rows();
  detail::require(detail::all_finite(columns), "span: non-finite vector entries");
  Real largest = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) largest = std::max(largest, columns.col(j).norm());
  if (largest == 0) return zero(n);

  // Normalize first so the cutoff is per direction rather than per magnitude.
  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < columns.cols(); ++j)
    if (columns.col(j).norm() > tol.rank * largest) kept.push_back(j);
  Matrix<Real> normalized(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k)
    normalized.col(static_cast<Eigen::Index>(k)) = columns.col(kept[k]).normalized();

  Eigen::JacobiSVD<Matrix<Real>> svd(normalized, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const Real cut = tol.rank * sigma(0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cut) ++rank;
  return Subspace(svd.matrixU().leftCols(rank));
}

/// True iff every basis vector of y lies in x up to tau_rank.
template <typename Real>
bool contains(const Subspace<Real>& x, const Subspace<Real>& y, const Tolerances<Real>& tol = {}) {
  detail::require(x.ambient_dim() == y.ambient_dim(), "contains: dimension mismatch");
  if (y.is_zero()) return true;
  const Matrix<Real> residual = y.basis() - x.projector() * y.basis();
  for (Eigen::Index j = 0; j < residual.cols(); ++j)
    if (residual.col(j).norm() > tol.rank) return false;
  return true;
}

template <typename Real>
bool equals(const Subspace<Real>& x, const Subspace<Real>& y, const Tolerances<Real>& tol = {}) {
  return x.dim() == y.dim() && contains(x, y, tol) && contains(y, x, tol);
}

template <typename Real>
Subspace<Real> join(const Subspace<Real>& x, const Subspace<Real>& y, const Tolerances<Real>& tol = {}) {
  detail::require(x.ambient_dim() == y.ambient_dim(), "join: dimension mismatch");
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  Matrix<Real> stacked(x.ambient_dim(), x.dim() + y.dim());
  stacked << x.basis(), y.basis();
  return Subspace<Real>::span(stacked, tol);
}

/// The orthogonal complement of x inside `within`; requires x to be contained in it.
template <typename Real>
Subspace<Real> ortho_complement(const Subspace<Real>& x, const Subspace<Real>& within,
                                const Tolerances<Real>& tol = {}) {
  detail::require(x.ambient_dim() == within.ambient_dim(), "ortho_complement: dimension mismatch");
  detail::require(contains(within, x, tol), "ortho_complement: subspace is not contained in the ambient subspace");
  if (x.is_zero()) return within;
  const Eigen::Index k = within.dim();
  const Matrix<Real> coords = within.basis().adjoint() * x.basis();  // k x d
  Eigen::JacobiSVD<Matrix<Real>> svd(coords, Eigen::ComputeFullU);
  const auto& sigma = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tol.rank * sigma(0)) ++rank;
  const Matrix<Real> basis = within.basis() * svd.matrixU().rightCols(k - rank);
  return Subspace<Real>::span(basis, tol);
}

template <typename Real>
Subspace<Real> ortho_complement(const Subspace<Real>& x, const Tolerances<Real>& tol = {}) {
  return ortho_complement(x, Subspace<Real>::full(x.ambient_dim()), tol);
}

template <typename Real>
Subspace<Real> intersect(const Subspace<Real>& x, const Subspace<Real>& y, const Tolerances<Real>& tol = {}) {
  detail::require(x.ambient_dim() == y.ambient_dim(), "intersect: dimension mismatch");
  return ortho_complement(join(ortho_complement(x, tol), ortho_complement(y, tol), tol), tol);
}

/// Span of eigenvectors with eigenvalue above tau_rank * lambda_max.
template <typename Real>
Subspace<Real> support(const std::type_identity_t<Matrix<Real>>& rho, const Tolerances<Real>& tol = {}) {
  const auto eig = hermitian_eig<Real>(rho, tol);
  const Eigen::Index n = rho.rows();
  const Real scale = eig.values.cwiseAbs().maxCoeff();
  detail::require(eig.values(n - 1) >= -tol.psd * std::max(Real(1), scale), "support: matrix is not positive semidefinite");
  if (scale == 0) return Subspace<Real>::zero(n);
  const Real cut = detail::relative_cutoff(eig.values, tol.rank);
  Eigen::Index rank = 0;
  while (rank < n && eig.values(rank) > cut) ++rank;
  return Subspace<Real>::span(eig.vectors.leftCols(rank), tol);
}

template <typename Real>
Subspace<Real> support(const DensityOperator<Real>& rho, const Tolerances<Real>& tol = {}) {
  return support<Real>(rho.matrix(), tol);
}

/// span{E_i |b> : Kraus operators E_i, basis vectors |b> of x}.
template <typename Real>
Subspace<Real> image(const Channel<Real>& channel, const Subspace<Real>& x, const Tolerances<Real>& tol = {}) {
  detail::require(channel.dim() == x.ambient_dim(), "image: dimension mismatch");
  if (x.is_zero()) return x;
  const auto& kraus = channel.kraus();
  Matrix<Real> columns(x.ambient_dim(), x.dim() * static_cast<Eigen::Index>(kraus.size()));
  for (std::size_t i = 0; i < kraus.size(); ++i)
    columns.middleCols(static_cast<Eigen::Index>(i) * x.dim(), x.dim()) = kraus[i] * x.basis();
  return Subspace<Real>::span(columns, tol);
}

/// Smallest subspace containing supp(rho) that is closed under image(channel, .).
template <typename Real>
Subspace<Real> reachable_space(const Channel<Real>& channel, const DensityOperator<Real>& rho,
                               const Tolerances<Real>& tol = {}) {
  detail::require(channel.dim() == rho.dim(), "reachable_space: dimension mismatch");
  auto reached = support(rho, tol);
  for (Eigen::Index round = 0; round < channel.dim(); ++round) {
    auto next = join(reached, image(channel, reached, tol), tol);
    if (next.dim() == reached.dim()) break;
    reached = std::move(next);
  }
  return reached;
}

/// rho -> P_x rho P_x.
template <typename Real>
Channel<Real> projection_channel(const Subspace<Real>& x) {
  return projection_channel<Real>(x.projector());
}

}  // namespace qmc

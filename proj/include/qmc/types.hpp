#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

namespace qmc {

template <typename Real>
using Complex = std::complex<Real>;

/// Dense complex matrix; the carrier for operators, states, projectors and
/// vectorized super-operators.
template <typename Real>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using MatrixXc = Matrix<double>;
using VectorXc = Vector<double>;

/// Any error raised by the library: dimension mismatches, failed validation,
/// violated preconditions, numerical breakdown.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical slack used for every rank, eigenvalue and validation decision.
template <typename Real>
struct Tolerances {
  Real rank = Real(1e-8);   // relative singular-value / eigenvalue cutoff
  Real eig = Real(1e-8);    // radius of the eigenvalue-1 cluster
  Real tp = Real(1e-9);     // sum E_i^dag E_i = I
  Real herm = Real(1e-9);
  Real psd = Real(1e-9);
  Real trace = Real(1e-9);
  std::size_t iter_cap = 1000000;

  void validate() const {
    if (!(rank > 0 && eig > 0 && tp > 0 && herm > 0 && psd > 0 && trace > 0) || iter_cap == 0)
      throw Error("tolerances must be strictly positive");
  }
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Real>
Real hermiticity_defect(const Matrix<Real>& a) {
  return (a - a.adjoint()).norm();
}

}  // namespace detail

/// Row-major stacking: vec(X)[i*n + j] = X(i, j), hence
/// vec(A X B) = (A kron B^T) vec(X).
template <typename Real>
Vector<Real> vec(const std::type_identity_t<Matrix<Real>>& x) {
  Vector<Real> v(x.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

/// Inverse of vec for a square n x n matrix.
template <typename Real>
Matrix<Real> unvec(const std::type_identity_t<Vector<Real>>& v, Eigen::Index n) {
  detail::require(v.size() == n * n, "unvec: vector length is not n^2");
  Matrix<Real> x(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = v(i * n + j);
  return x;
}

template <typename Real>
Matrix<Real> kron(const std::type_identity_t<Matrix<Real>>& a, const std::type_identity_t<Matrix<Real>>& b) {
  Matrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Real>
Matrix<Real> identity(Eigen::Index n) {
  return Matrix<Real>::Identity(n, n);
}

/// Trace norm of a Hermitian matrix (sum of |eigenvalues|).
template <typename Real>
Real trace_norm(const std::type_identity_t<Matrix<Real>>& a) {
  const Matrix<Real> h = (a + a.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

/// Half the trace norm of the difference.
template <typename Real>
Real trace_distance(const std::type_identity_t<Matrix<Real>>& a, const std::type_identity_t<Matrix<Real>>& b) {
  return trace_norm<Real>(a - b) / Real(2);
}

}  // namespace qmc

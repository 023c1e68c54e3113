#pragma once

#include <cmath>
#include <set>
#include <vector>

#include "qmc/spaces.hpp"

// Built-in quantum Markov chains.
namespace qmc::models {

template <typename Real>
Vector<Real> ket(Eigen::Index n, Eigen::Index i) {
  Vector<Real> v = Vector<Real>::Zero(n);
  v(i) = 1;
  return v;
}

/// Five-level chain with two symmetric two-dimensional recurrent blocks,
/// span{|0>,|1>} and span{|2>,|3>}, fed from the transient level |4>.
template <typename Real>
Channel<Real> e5(const Tolerances<Real>& tol = {}) {
  const Eigen::Index n = 5;
  const Real s = Real(1) / std::sqrt(Real(2));
  auto k = [&](Eigen::Index i) { return ket<Real>(n, i); };
  const Vector<Real> p01 = s * (k(0) + k(1)), m01 = s * (k(0) - k(1));
  const Vector<Real> p23 = s * (k(2) + k(3)), m23 = s * (k(2) - k(3));
  auto op = [](const Vector<Real>& out, const Vector<Real>& in) -> Matrix<Real> { return out * in.adjoint(); };

  std::vector<Matrix<Real>> kraus;
  kraus.push_back(s * (op(k(1), p01) + op(k(3), p23)));
  kraus.push_back(s * (op(k(1), m01) + op(k(3), m23)));
  kraus.push_back(s * (op(k(0), p01) + op(k(2), p23)));
  kraus.push_back(s * (op(k(0), m01) + op(k(2), m23)));
  kraus.push_back((op(k(0), k(4)) + op(k(1), k(4)) + op(k(2), k(4)) + Real(4) * op(k(3), k(4)) +
                   Real(9) * op(k(4), k(4))) / Real(10));
  return Channel<Real>(std::move(kraus), true, tol);
}

/// Shift-coin unitary S (I kron H) of the Hadamard walk on a cycle of `size`
/// positions. Basis index = 2 * position + coin; coin 0 steps right, 1 left.
template <typename Real>
Matrix<Real> walk_unitary(Eigen::Index size) {
  detail::require(size >= 2, "walk: cycle size must be at least 2");
  const Eigen::Index n = 2 * size;
  Matrix<Real> shift = Matrix<Real>::Zero(n, n);
  for (Eigen::Index i = 0; i < size; ++i) {
    shift(2 * ((i + 1) % size), 2 * i) = 1;
    shift(2 * ((i + size - 1) % size) + 1, 2 * i + 1) = 1;
  }
  const Real s = Real(1) / std::sqrt(Real(2));
  Matrix<Real> hadamard(2, 2);
  hadamard << s, s, s, -s;
  return shift * kron<Real>(identity<Real>(size), hadamard);
}

/// Positions (both coin states) marked as absorbing boundary.
template <typename Real>
Subspace<Real> walk_boundary(Eigen::Index size, const std::vector<Eigen::Index>& positions) {
  const Eigen::Index n = 2 * size;
  std::set<Eigen::Index> unique(positions.begin(), positions.end());
  Matrix<Real> columns(n, 2 * static_cast<Eigen::Index>(unique.size()));
  Eigen::Index c = 0;
  for (Eigen::Index p : unique) {
    detail::require(p >= 0 && p < size, "walk: boundary position out of range");
    columns.col(c++) = ket<Real>(n, 2 * p);
    columns.col(c++) = ket<Real>(n, 2 * p + 1);
  }
  return Subspace<Real>::span(columns);
}

/// The walk as a channel. With boundary positions the measurement is folded
/// in: Kraus {P_B, U (I - P_B)}.
template <typename Real>
Channel<Real> hadamard_walk(Eigen::Index size, const std::vector<Eigen::Index>& boundary = {},
                            const Tolerances<Real>& tol = {}) {
  const Matrix<Real> u = walk_unitary<Real>(size);
  if (boundary.empty()) return Channel<Real>({u}, true, tol);
  const auto b = walk_boundary<Real>(size, boundary);
  return Channel<Real>({b.projector(), u * (identity<Real>(2 * size) - b.projector())}, true, tol);
}

}  // namespace qmc::models

#pragma once

#include <random>
#include <vector>

#include "qmc/qmc.hpp"

// Random instances for property tests. All generators draw from a caller-owned
// engine so every test is reproducible from its seed.
namespace qmc::testing {

using Rng = std::mt19937_64;

inline MatrixXc ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> g;
  MatrixXc m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

inline MatrixXc random_unitary(Eigen::Index n, Rng& rng) {
  Eigen::HouseholderQR<MatrixXc> qr(ginibre(n, n, rng));
  return qr.householderQ() * MatrixXc::Identity(n, n);
}

inline MatrixXc random_hermitian(Eigen::Index n, Rng& rng) {
  const MatrixXc a = ginibre(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

inline VectorXc random_unit_vector(Eigen::Index n, Rng& rng) {
  VectorXc v = ginibre(n, 1, rng).col(0);
  return v / v.norm();
}

inline DensityOperator<double> random_state(Eigen::Index n, Rng& rng) {
  const MatrixXc a = ginibre(n, n, rng);
  MatrixXc rho = a * a.adjoint();
  return DensityOperator<double>(rho / rho.trace().real());
}

/// Random unit vector inside x (x nonzero).
inline VectorXc random_vector_in(const Subspace<double>& x, Rng& rng) {
  return x.basis() * random_unit_vector(x.dim(), rng);
}

/// Random k-dimensional subspace of x.
inline Subspace<double> random_subspace_of(const Subspace<double>& x, Eigen::Index k, Rng& rng) {
  if (k == 0) return Subspace<double>::zero(x.ambient_dim());
  return Subspace<double>::span(x.basis() * ginibre(x.dim(), k, rng));
}

inline Subspace<double> random_subspace(Eigen::Index n, Eigen::Index k, Rng& rng) {
  return random_subspace_of(Subspace<double>::full(n), k, rng);
}

/// Kraus operators normalized so that sum_i K_i^dag K_i = I on the columns.
inline std::vector<MatrixXc> complete_kraus(std::vector<MatrixXc> kraus) {
  MatrixXc s = MatrixXc::Zero(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) s += k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(s);
  const MatrixXc inv_sqrt = es.operatorInverseSqrt();
  for (auto& k : kraus) k = k * inv_sqrt;
  return kraus;
}

/// Generic channel: m Ginibre Kraus operators made trace-preserving.
inline Channel<double> random_channel(Eigen::Index n, int m, Rng& rng) {
  std::vector<MatrixXc> kraus;
  for (int i = 0; i < m; ++i) kraus.push_back(ginibre(n, n, rng));
  return Channel<double>(complete_kraus(std::move(kraus)));
}

/// Known block layout of a structured channel, in the rotated frame.
struct Blocks {
  std::vector<Subspace<double>> recurrent;  // each one a BSCC
  Subspace<double> transient;
};

struct StructuredChannel {
  Channel<double> channel;
  Blocks blocks;
};

/// Channel with prescribed BSCC and transient dimensions in a random frame.
/// Each recurrent block carries a generic channel of its own; the transient
/// block leaks into everything. With `doubled`, the first block is I (x) K on a
/// 2 * k dimensional space so its BSCC decomposition is not unique.
inline StructuredChannel structured_channel(const std::vector<Eigen::Index>& block_dims, Eigen::Index transient_dim,
                                            Rng& rng, bool doubled = false) {
  Eigen::Index n = transient_dim;
  for (auto d : block_dims) n += d;
  const MatrixXc frame = random_unitary(n, rng);
  std::vector<MatrixXc> kraus;
  Blocks blocks{{}, Subspace<double>::zero(n)};
  Eigen::Index offset = 0;
  for (std::size_t b = 0; b < block_dims.size(); ++b) {
    const Eigen::Index d = block_dims[b];
    if (doubled && b == 0 && d % 2 == 0) {
      const Eigen::Index h = d / 2;
      std::vector<MatrixXc> inner{ginibre(h, h, rng), ginibre(h, h, rng)};
      for (const auto& k : complete_kraus(std::move(inner))) {
        MatrixXc e = MatrixXc::Zero(n, n);
        e.block(offset, offset, d, d) = kron<double>(identity<double>(2), k);
        kraus.push_back(e);
      }
    } else {
      std::vector<MatrixXc> inner{ginibre(d, d, rng), ginibre(d, d, rng)};
      for (const auto& k : complete_kraus(std::move(inner))) {
        MatrixXc e = MatrixXc::Zero(n, n);
        e.block(offset, offset, d, d) = k;
        kraus.push_back(e);
      }
      blocks.recurrent.push_back(Subspace<double>::span(frame.middleCols(offset, d)));
    }
    offset += d;
  }
  if (transient_dim > 0) {
    std::vector<MatrixXc> inner{ginibre(n, transient_dim, rng), ginibre(n, transient_dim, rng)};
    for (const auto& k : complete_kraus(std::move(inner))) {
      MatrixXc e = MatrixXc::Zero(n, n);
      e.rightCols(transient_dim) = k;
      kraus.push_back(e);
    }
    blocks.transient = Subspace<double>::span(frame.rightCols(transient_dim));
  }
  for (auto& e : kraus) e = frame * e * frame.adjoint();
  return {Channel<double>(std::move(kraus)), std::move(blocks)};
}

/// A mix of generic and structured channels with n <= 4, indexed by `i`.
inline Channel<double> test_channel(int i, Rng& rng) {
  switch (i % 5) {
    case 0: return random_channel(2 + i % 3, 2, rng);
    case 1: return structured_channel({1, 2}, 1, rng).channel;
    case 2: return structured_channel({2}, 2, rng).channel;
    case 3: return structured_channel({4}, 0, rng, true).channel;
    default: return structured_channel({1, 1, 1}, 1, rng).channel;
  }
}

}  // namespace qmc::testing

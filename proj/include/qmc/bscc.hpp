#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qmc/spectral.hpp"

namespace qmc {

/// H = B_1 + ... + B_u + T, pairwise orthogonal; bsccs sorted by dimension.
template <typename Real>
struct Decomposition {
  std::vector<Subspace<Real>> bsccs;
  Subspace<Real> transient;
};

struct DecomposeOptions {
  /// Shuffles the fixed-point basis before each split; unset keeps natural order.
  std::optional<std::uint64_t> seed;
};

/// Whether x is a bottom strongly connected component: x must be invariant
/// and P_x o E must have exactly one fixed state, whose support is x.
template <typename Real>
bool check_bscc(const Channel<Real>& channel, const Subspace<Real>& x, const Tolerances<Real>& tol = {}) {
  detail::require(channel.dim() == x.ambient_dim(), "check_bscc: dimension mismatch");
  detail::require(!x.is_zero(), "check_bscc: zero subspace");
  if (!contains(x, image(channel, x, tol), tol)) return false;
  const auto restricted = compose(projection_channel(x), channel);
  const auto basis = fixed_point_basis(restricted, tol);
  if (basis.size() != 1) return false;
  return equals(support(basis.elements.front(), tol), x, tol);
}

namespace detail {

template <typename Real>
void decompose_recursive(const Channel<Real>& channel, const Subspace<Real>& x, const Tolerances<Real>& tol,
                         std::mt19937_64* rng, int depth, std::vector<Subspace<Real>>& out) {
  require(depth <= channel.dim(), "decompose: recursion deeper than the dimension (subspace is not a fixed-state support)");
  const auto restricted = compose(projection_channel(x), channel);
  auto basis = fixed_point_basis(restricted, tol);
  require(!basis.empty(), "decompose: subspace carries no fixed state");
  if (basis.size() == 1) {
    out.push_back(support(basis.elements.front(), tol));
    return;
  }
  if (rng) std::shuffle(basis.elements.begin(), basis.elements.end(), *rng);

  const Matrix<Real> delta = basis.elements[0].matrix() - basis.elements[1].matrix();
  for (Real scale : {Real(1), Real(10)}) {
    const auto split = positive_part_split<Real>(delta, tol, scale);
    const auto positive = support<Real>(split.plus, tol);
    if (positive.is_zero() || positive.dim() >= x.dim()) continue;
    const auto rest = ortho_complement(positive, x, tol);
    decompose_recursive(channel, positive, tol, rng, depth + 1, out);
    decompose_recursive(channel, rest, tol, rng, depth + 1, out);
    return;
  }
  throw Error("decompose: positive part of a fixed-point difference does not split the subspace");
}

// Lexicographic key over the projector, which unlike the basis is canonical.
template <typename Real>
std::vector<long long> fingerprint(const Subspace<Real>& s) {
  std::vector<long long> key;
  const auto& p = s.projector();
  key.reserve(static_cast<std::size_t>(2 * p.size()));
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      key.push_back(std::llround(static_cast<double>(p(i, j).real()) * 1e9));
      key.push_back(std::llround(static_cast<double>(p(i, j).imag()) * 1e9));
    }
  return key;
}

template <typename Real>
void sort_components(std::vector<Subspace<Real>>& components) {
  std::vector<std::pair<std::vector<long long>, std::size_t>> keys;
  for (std::size_t k = 0; k < components.size(); ++k) keys.emplace_back(fingerprint(components[k]), k);
  std::vector<std::size_t> order(components.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (components[a].dim() != components[b].dim()) return components[a].dim() < components[b].dim();
    return keys[a].first < keys[b].first;
  });
  std::vector<Subspace<Real>> sorted;
  sorted.reserve(components.size());
  for (std::size_t k : order) sorted.push_back(components[k]);
  components = std::move(sorted);
}

}  // namespace detail

/// Splits x, the support of some fixed state of the channel, into pairwise
/// orthogonal BSCCs whose direct sum is x.
template <typename Real>
std::vector<Subspace<Real>> decompose_fixed_support(const Channel<Real>& channel, const Subspace<Real>& x,
                                                    const Tolerances<Real>& tol = {},
                                                    const DecomposeOptions& options = {}) {
  detail::require(channel.dim() == x.ambient_dim(), "decompose_fixed_support: dimension mismatch");
  std::vector<Subspace<Real>> out;
  if (x.is_zero()) return out;
  std::optional<std::mt19937_64> rng;
  if (options.seed) rng.emplace(*options.seed);
  detail::decompose_recursive(channel, x, tol, rng ? &*rng : nullptr, 0, out);
  return out;
}

/// BSCC decomposition of E_inf(H) plus the largest transient subspace E_inf(H)^perp.
template <typename Real>
Decomposition<Real> decompose_state_space(const Channel<Real>& channel, const AsymptoticAverage<Real>& avg,
                                          const Tolerances<Real>& tol = {}, const DecomposeOptions& options = {}) {
  const Eigen::Index n = channel.dim();
  const auto recurrent = average_image(avg, Subspace<Real>::full(n), tol);
  auto bsccs = decompose_fixed_support(channel, recurrent, tol, options);
  detail::sort_components(bsccs);
  return Decomposition<Real>{std::move(bsccs), ortho_complement(recurrent, tol)};
}

template <typename Real>
Decomposition<Real> decompose_state_space(const Channel<Real>& channel, const Tolerances<Real>& tol = {},
                                          const DecomposeOptions& options = {}) {
  return decompose_state_space(channel, asymptotic_average(channel, tol), tol, options);
}

/// x is transient iff it is orthogonal to E_inf(H).
template <typename Real>
bool is_transient(const AsymptoticAverage<Real>& avg, const Subspace<Real>& x, const Tolerances<Real>& tol = {}) {
  const auto recurrent = average_image(avg, Subspace<Real>::full(avg.dim()), tol);
  return contains(ortho_complement(recurrent, tol), x, tol);
}

template <typename Real>
bool is_transient(const Channel<Real>& channel, const Subspace<Real>& x, const Tolerances<Real>& tol = {}) {
  return is_transient(asymptotic_average(channel, tol), x, tol);
}

/// rho -> P_y E(P_y rho P_y) P_y.
template <typename Real>
Channel<Real> compress_to(const Channel<Real>& channel, const Subspace<Real>& y) {
  detail::require(channel.dim() == y.ambient_dim(), "compress_to: dimension mismatch");
  std::vector<Matrix<Real>> kraus;
  for (const auto& e : channel.kraus()) kraus.push_back(y.projector() * e * y.projector());
  return Channel<Real>(std::move(kraus), false);
}

/// Whether some BSCC lies inside y, i.e. the channel has a fixed state supported in y.
template <typename Real>
bool contains_bscc(const Channel<Real>& channel, const Subspace<Real>& y, const Tolerances<Real>& tol = {}) {
  if (y.is_zero()) return false;
  return !fixed_point_basis(compress_to(channel, y), tol).empty();
}

}  // namespace qmc

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qmc/bscc.hpp"

namespace qmc {

enum class AnalysisKind { reach, rep, pers };

inline const char* to_string(AnalysisKind kind) {
  switch (kind) {
    case AnalysisKind::reach: return "reach";
    case AnalysisKind::rep: return "rep";
    case AnalysisKind::pers: return "pers";
  }
  return "?";
}

template <typename Real>
struct AnalysisReport {
  AnalysisKind kind;
  Real probability;                 // clamped to [0, 1]
  Subspace<Real> witness_subspace;  // X(G) for rep, Y(G) for pers, zero for reach
  std::optional<std::size_t> iterations_for_oracle_check;
  bool target_adjusted = false;     // G was intersected with E_inf(H)
};

namespace detail {

template <typename Real>
Real clamp_probability(Real raw) {
  require(raw >= Real(-1e-6) && raw <= Real(1 + 1e-6), "probability " + std::to_string(static_cast<double>(raw)) +
                                                           " outside [0, 1]: numerical breakdown");
  return std::clamp(raw, Real(0), Real(1));
}

template <typename Real>
Subspace<Real> recurrent_space(const AsymptoticAverage<Real>& avg, const Tolerances<Real>& tol) {
  return average_image(avg, Subspace<Real>::full(avg.dim()), tol);
}

}  // namespace detail

/// G absorbing: measure {P_G, I - P_G}, keep the G branch, evolve the other.
/// Kraus operators {P_G} and {E_i (I - P_G)}.
template <typename Real>
Channel<Real> absorbed_channel(const Channel<Real>& channel, const Subspace<Real>& g, const Tolerances<Real>& tol = {}) {
  detail::require(channel.dim() == g.ambient_dim(), "absorbed_channel: dimension mismatch");
  const Matrix<Real> outside = identity<Real>(channel.dim()) - g.projector();
  std::vector<Matrix<Real>> kraus{g.projector()};
  for (const auto& e : channel.kraus()) kraus.push_back(e * outside);
  return Channel<Real>(std::move(kraus), channel.trace_preserving(), tol);
}

/// Pr(rho |= <> G) = tr(P_G Etilde_inf(rho)) for the absorbed channel Etilde.
template <typename Real>
AnalysisReport<Real> reach_probability(const Channel<Real>& channel, const DensityOperator<Real>& rho,
                                       const Subspace<Real>& g, const Tolerances<Real>& tol = {}) {
  detail::require(channel.dim() == rho.dim() && channel.dim() == g.ambient_dim(), "reach_probability: dimension mismatch");
  const auto absorbed = absorbed_channel(channel, g, tol);
  const auto limit = apply_average(asymptotic_average(absorbed, tol), rho);
  const Real raw = (g.projector() * limit).trace().real();
  return {AnalysisKind::reach, detail::clamp_probability(raw), Subspace<Real>::zero(channel.dim()), std::nullopt, false};
}

template <typename Real>
struct SatisfactionSubspaces {
  Subspace<Real> x_g;  // states visiting G infinitely often: E_inf(G)
  Subspace<Real> y_g;  // states eventually always in G: E_inf(G^perp)^perp
  bool target_adjusted = false;
};

/// X(G) and Y(G); G is first intersected with E_inf(H) and all complements are
/// taken inside E_inf(H).
template <typename Real>
SatisfactionSubspaces<Real> satisfaction_subspaces(const AsymptoticAverage<Real>& avg, const Subspace<Real>& g,
                                                   const Tolerances<Real>& tol = {}) {
  detail::require(avg.dim() == g.ambient_dim(), "satisfaction_subspaces: dimension mismatch");
  const auto recurrent = detail::recurrent_space(avg, tol);
  const auto target = intersect(g, recurrent, tol);
  const auto x_g = average_image(avg, target, tol);
  const auto escape = average_image(avg, ortho_complement(target, recurrent, tol), tol);
  return {x_g, ortho_complement(escape, recurrent, tol), !equals(target, g, tol)};
}

template <typename Real>
SatisfactionSubspaces<Real> satisfaction_subspaces(const Channel<Real>& channel, const Subspace<Real>& g,
                                                   const Tolerances<Real>& tol = {}) {
  return satisfaction_subspaces(asymptotic_average(channel, tol), g, tol);
}

/// Pr(rho |= pers(G)) = tr(P_Y(G) E_inf(rho)).
template <typename Real>
AnalysisReport<Real> persistence_probability(const AsymptoticAverage<Real>& avg, const DensityOperator<Real>& rho,
                                             const Subspace<Real>& g, const Tolerances<Real>& tol = {}) {
  detail::require(avg.dim() == rho.dim(), "persistence_probability: dimension mismatch");
  const auto spaces = satisfaction_subspaces(avg, g, tol);
  const auto limit = apply_average(avg, rho);
  const Real raw = (spaces.y_g.projector() * limit).trace().real();
  return {AnalysisKind::pers, detail::clamp_probability(raw), spaces.y_g, std::nullopt, spaces.target_adjusted};
}

template <typename Real>
AnalysisReport<Real> persistence_probability(const Channel<Real>& channel, const DensityOperator<Real>& rho,
                                             const Subspace<Real>& g, const Tolerances<Real>& tol = {}) {
  return persistence_probability(asymptotic_average(channel, tol), rho, g, tol);
}

/// Pr(rho |= rep(G)) = 1 - Pr(rho |= pers(G^perp)), complement inside E_inf(H).
template <typename Real>
AnalysisReport<Real> repeated_reachability_probability(const AsymptoticAverage<Real>& avg,
                                                       const DensityOperator<Real>& rho, const Subspace<Real>& g,
                                                       const Tolerances<Real>& tol = {}) {
  detail::require(avg.dim() == rho.dim() && avg.dim() == g.ambient_dim(),
                  "repeated_reachability_probability: dimension mismatch");
  const auto recurrent = detail::recurrent_space(avg, tol);
  const auto target = intersect(g, recurrent, tol);
  const auto complement = ortho_complement(target, recurrent, tol);
  const auto pers = persistence_probability(avg, rho, complement, tol);
  return {AnalysisKind::rep, detail::clamp_probability(1 - pers.probability), average_image(avg, target, tol),
          std::nullopt, !equals(target, g, tol)};
}

template <typename Real>
AnalysisReport<Real> repeated_reachability_probability(const Channel<Real>& channel, const DensityOperator<Real>& rho,
                                                       const Subspace<Real>& g, const Tolerances<Real>& tol = {}) {
  return repeated_reachability_probability(asymptotic_average(channel, tol), rho, g, tol);
}

template <typename Real>
struct AbsorptionCheck {
  bool converges_to_zero;  // for every initial state
  Real residual;           // lim tr((P_{x^perp} o E)^k(rho)) for this rho
};

/// Measure-many termination on x: iterate P_{x^perp} o E. The surviving mass
/// vanishes for all states iff x^perp contains no BSCC.
template <typename Real>
AbsorptionCheck<Real> absorption_limit_check(const Channel<Real>& channel, const DensityOperator<Real>& rho,
                                             const Subspace<Real>& x, const Tolerances<Real>& tol = {}) {
  detail::require(channel.dim() == rho.dim() && channel.dim() == x.ambient_dim(), "absorption_limit_check: dimension mismatch");
  const auto outside = ortho_complement(x, tol);
  const auto survive = compose(projection_channel(outside), channel);
  const Real residual = apply_average(asymptotic_average(survive, tol), rho).trace().real();
  return {!contains_bscc(channel, outside, tol), std::clamp(residual, Real(0), Real(1))};
}

}  // namespace qmc

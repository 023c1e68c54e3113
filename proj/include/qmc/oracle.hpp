#pragma once

#include <cmath>
#include <vector>

#include "qmc/analysis.hpp"

// Brute-force references. Iteration helpers only ever apply Kraus operators
// step by step; none of them uses the spectral projector of the analysis layer.
namespace qmc::oracle {

template <typename Real>
struct IterationTrace {
  std::vector<Real> traces;  // observed quantity after steps 1..steps
  std::size_t steps = 0;
  bool converged = false;
  Real final_value = 0;
};

/// E^k(rho).
template <typename Real>
Matrix<Real> power_iterate(const Channel<Real>& channel, const std::type_identity_t<Matrix<Real>>& rho, std::size_t k) {
  Matrix<Real> state = rho;
  for (std::size_t step = 0; step < k; ++step) state = qmc::apply(channel, state);
  return state;
}

/// (1/N) sum_{k=1..N} E^k(rho), accumulated on the fly.
template <typename Real>
Matrix<Real> cesaro_average(const Channel<Real>& channel, const std::type_identity_t<Matrix<Real>>& rho,
                            std::size_t n_terms) {
  detail::require(n_terms >= 1, "cesaro_average: need at least one term");
  Matrix<Real> state = rho;
  Matrix<Real> sum = Matrix<Real>::Zero(rho.rows(), rho.cols());
  for (std::size_t k = 0; k < n_terms; ++k) {
    state = qmc::apply(channel, state);
    sum += state;
  }
  return sum / Real(n_terms);
}

struct SweepOptions {
  std::size_t plateau = 50;  // consecutive sub-tolerance increments required
  std::size_t budget = 0;    // 0 = use Tolerances::iter_cap
};

/// Iterates the absorbed channel and records tr(P_G Etilde^k(rho)); stops once
/// the increment stays below `tol` for a full plateau window, or at the budget.
template <typename Real>
IterationTrace<Real> absorption_sweep(const Channel<Real>& channel, const std::type_identity_t<Matrix<Real>>& rho,
                                      const Subspace<Real>& g, Real tol, const Tolerances<Real>& tols = {},
                                      const SweepOptions& options = {}) {
  detail::require(tol > 0, "absorption_sweep: tolerance must be positive");
  const auto absorbed = absorbed_channel(channel, g, tols);
  const std::size_t budget = options.budget ? options.budget : tols.iter_cap;
  IterationTrace<Real> trace;
  Matrix<Real> state = rho;
  Real previous = (g.projector() * state).trace().real();
  std::size_t quiet = 0;
  while (trace.steps < budget) {
    state = qmc::apply(absorbed, state);
    const Real value = (g.projector() * state).trace().real();
    trace.traces.push_back(value);
    ++trace.steps;
    quiet = std::abs(value - previous) < tol ? quiet + 1 : 0;
    previous = value;
    if (quiet >= options.plateau) {
      trace.converged = true;
      break;
    }
  }
  trace.final_value = previous;
  return trace;
}

/// Steps of P_{x^perp} o E until the surviving trace drops below `threshold`.
template <typename Real>
IterationTrace<Real> survival_sweep(const Channel<Real>& channel, const std::type_identity_t<Matrix<Real>>& rho,
                                    const Subspace<Real>& x, Real threshold, std::size_t budget) {
  const Matrix<Real> keep = identity<Real>(channel.dim()) - x.projector();
  IterationTrace<Real> trace;
  Matrix<Real> state = rho;
  while (trace.steps < budget) {
    state = keep * qmc::apply(channel, state) * keep;
    const Real value = state.trace().real();
    trace.traces.push_back(value);
    ++trace.steps;
    trace.final_value = value;
    if (value < threshold) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

/// Join of the supports of all fixed states of the channel that live inside g;
/// equals the join of the BSCCs contained in g.
template <typename Real>
Subspace<Real> fixed_states_within(const Channel<Real>& channel, const Subspace<Real>& g, const Tolerances<Real>& tol = {}) {
  auto out = Subspace<Real>::zero(channel.dim());
  if (g.is_zero()) return out;
  for (const auto& sigma : fixed_point_basis(compress_to(channel, g), tol).elements)
    out = join(out, support(sigma, tol), tol);
  return out;
}

}  // namespace qmc::oracle

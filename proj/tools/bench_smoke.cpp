// Wall-clock timings of the main pipelines on small random channels.
#include <chrono>
#include <cstdio>
#include <random>

#include "qmc/qmc.hpp"

namespace {

using qmc::MatrixXc;

qmc::Channel<double> random_channel(Eigen::Index n, int m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<MatrixXc> kraus(m, MatrixXc(n, n));
  MatrixXc s = MatrixXc::Zero(n, n);
  for (auto& k : kraus) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) k(i, j) = {g(rng), g(rng)};
    s += k.adjoint() * k;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(s);
  const MatrixXc inv_sqrt = es.operatorInverseSqrt();
  for (auto& k : kraus) k = k * inv_sqrt;
  return qmc::Channel<double>(std::move(kraus));
}

template <typename F>
double millis(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::mt19937_64 rng(7);
  std::printf("%4s %14s %14s %14s\n", "n", "average ms", "decompose ms", "reach ms");
  for (Eigen::Index n : {2, 4, 8}) {
    const auto channel = random_channel(n, 2, rng);
    const auto rho = qmc::DensityOperator<double>::maximally_mixed(n);
    const auto g = qmc::Subspace<double>::span(qmc::models::ket<double>(n, 0));
    const double avg = millis([&] { (void)qmc::asymptotic_average(channel); });
    const double dec = millis([&] { (void)qmc::decompose_state_space(channel); });
    const double reach = millis([&] { (void)qmc::reach_probability(channel, rho, g); });
    std::printf("%4ld %14.3f %14.3f %14.3f\n", static_cast<long>(n), avg, dec, reach);
  }
}

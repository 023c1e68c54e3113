#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support/properties.hpp"

using namespace qmc;
using qmc::testing::Rng;

namespace {

Subspace<double> levels(Eigen::Index n, std::initializer_list<Eigen::Index> idx) {
  MatrixXc cols(n, static_cast<Eigen::Index>(idx.size()));
  Eigen::Index c = 0;
  for (auto i : idx) cols.col(c++) = models::ket<double>(n, i);
  return Subspace<double>::span(cols);
}

std::vector<Eigen::Index> dims(const std::vector<Subspace<double>>& parts) {
  std::vector<Eigen::Index> out;
  for (const auto& p : parts) out.push_back(p.dim());
  std::sort(out.begin(), out.end());
  return out;
}

void check_all_properties(const Channel<double>& e, const Decomposition<double>& d, Rng& rng) {
  for (const auto& c : {qmc::testing::decomposition_structure(e, d), qmc::testing::invariant_mass_monotone(e, d, rng),
                        qmc::testing::bscc_reachability(e, d, rng)})
    CHECK_MESSAGE(c.ok, c.detail);
}

}  // namespace

TEST_CASE("check_bscc") {
  const auto e5 = models::e5<double>();
  CHECK(check_bscc(e5, levels(5, {0, 1})));
  CHECK(check_bscc(e5, levels(5, {2, 3})));
  CHECK_FALSE(check_bscc(e5, levels(5, {4})));
  CHECK_FALSE(check_bscc(e5, Subspace<double>::full(5)));
  CHECK_FALSE(check_bscc(e5, levels(5, {0})));  // not invariant

  const VectorXc d1a = (models::ket<double>(5, 0) + models::ket<double>(5, 2)) / std::sqrt(2.0);
  const VectorXc d1b = (models::ket<double>(5, 1) + models::ket<double>(5, 3)) / std::sqrt(2.0);
  MatrixXc d1(5, 2);
  d1 << d1a, d1b;
  CHECK(check_bscc(e5, Subspace<double>::span(d1)));

  Rng rng(1);
  const auto id = Channel<double>::identity_channel(3);
  CHECK(check_bscc(id, qmc::testing::random_subspace(3, 1, rng)));
  CHECK_FALSE(check_bscc(id, qmc::testing::random_subspace(3, 2, rng)));

  CHECK_THROWS_AS(check_bscc(e5, Subspace<double>::zero(5)), Error);
}

TEST_CASE("decompose_fixed_support") {
  const auto e5 = models::e5<double>();
  const auto parts = decompose_fixed_support(e5, levels(5, {0, 1, 2, 3}));
  CHECK(dims(parts) == std::vector<Eigen::Index>{2, 2});
  for (const auto& p : parts) CHECK(check_bscc(e5, p));
  CHECK((parts[0].projector() * parts[1].projector()).norm() < 1e-8);

  const auto single = decompose_fixed_support(e5, levels(5, {2, 3}));
  REQUIRE(single.size() == 1);
  CHECK(equals(single[0], levels(5, {2, 3})));

  const auto id = Channel<double>::identity_channel(2);
  const auto pair = decompose_fixed_support(id, Subspace<double>::full(2));
  CHECK(dims(pair) == std::vector<Eigen::Index>{1, 1});
  CHECK((pair[0].projector() * pair[1].projector()).norm() < 1e-8);
}

TEST_CASE("decompose_state_space") {
  Rng rng(2);
  SUBCASE("five-level chain") {
    const auto e5 = models::e5<double>();
    const auto d = decompose_state_space(e5);
    CHECK(dims(d.bsccs) == std::vector<Eigen::Index>{2, 2});
    CHECK(d.transient.dim() == 1);
    CHECK(equals(d.transient, levels(5, {4})));
    check_all_properties(e5, d, rng);
  }
  SUBCASE("identity channel") {
    const auto id = Channel<double>::identity_channel(3);
    const auto d = decompose_state_space(id);
    CHECK(dims(d.bsccs) == std::vector<Eigen::Index>{1, 1, 1});
    CHECK(d.transient.is_zero());
    check_all_properties(id, d, rng);
  }
  SUBCASE("walk with an absorbing boundary") {
    const auto walk = models::hadamard_walk<double>(4, {0});
    const auto d = decompose_state_space(walk);
    // independent count: rank of the Cesaro average of I/n
    const MatrixXc cesaro = oracle::cesaro_average(walk, identity<double>(8) / 8.0, 20000);
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(cesaro, Eigen::EigenvaluesOnly);
    const auto recurrent_dim = (es.eigenvalues().array() > 1e-3).count();
    Eigen::Index total = 0;
    for (const auto& b : d.bsccs) total += b.dim();
    CHECK(total == recurrent_dim);
    CHECK(dims(d.bsccs) == std::vector<Eigen::Index>{1, 1});
    CHECK(equals(d.transient, ortho_complement(models::walk_boundary<double>(4, {0}))));
    check_all_properties(walk, d, rng);
  }
  SUBCASE("structured channels recover their blocks") {
    for (int t = 0; t < 5; ++t) {
      const auto sc = qmc::testing::structured_channel({1, 2}, 1, rng);
      const auto d = decompose_state_space(sc.channel);
      CHECK(dims(d.bsccs) == std::vector<Eigen::Index>{1, 2});
      for (const auto& b : sc.blocks.recurrent) {
        CHECK(check_bscc(sc.channel, b));
        const bool found = std::any_of(d.bsccs.begin(), d.bsccs.end(), [&](const auto& x) { return equals(x, b); });
        CHECK(found);
      }
      CHECK(equals(d.transient, sc.blocks.transient));
      check_all_properties(sc.channel, d, rng);
    }
  }
  SUBCASE("random channels") {
    for (int t = 0; t < 10; ++t) {
      const auto e = qmc::testing::test_channel(t, rng);
      check_all_properties(e, decompose_state_space(e), rng);
    }
  }
}

TEST_CASE("dimension multiset does not depend on the basis ordering seed") {
  Rng rng(3);
  std::vector<Channel<double>> channels{models::e5<double>(), Channel<double>::identity_channel(3),
                                        qmc::testing::structured_channel({4}, 0, rng, true).channel,
                                        qmc::testing::structured_channel({2, 2}, 0, rng).channel};
  for (const auto& e : channels) {
    const auto reference = dims(decompose_state_space(e).bsccs);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto d = decompose_state_space(e, {}, DecomposeOptions{seed});
      CHECK(dims(d.bsccs) == reference);
      const auto c = qmc::testing::decomposition_structure(e, d);
      CHECK_MESSAGE(c.ok, c.detail);
    }
  }
}

TEST_CASE("decomposition output is reproducible") {
  const auto e5 = models::e5<double>();
  const auto a = decompose_state_space(e5, {}, DecomposeOptions{7});
  const auto b = decompose_state_space(e5, {}, DecomposeOptions{7});
  REQUIRE(a.bsccs.size() == b.bsccs.size());
  for (std::size_t i = 0; i < a.bsccs.size(); ++i) CHECK((a.bsccs[i].projector() - b.bsccs[i].projector()).norm() < 1e-12);
}

TEST_CASE("is_transient") {
  const auto e5 = models::e5<double>();
  CHECK(is_transient(e5, levels(5, {4})));
  CHECK_FALSE(is_transient(e5, levels(5, {0})));
  CHECK(is_transient(e5, Subspace<double>::zero(5)));
}

TEST_CASE("contains_bscc") {
  const auto e5 = models::e5<double>();
  CHECK(contains_bscc(e5, levels(5, {1, 2, 3, 4})));
  CHECK_FALSE(contains_bscc(e5, levels(5, {4})));
  CHECK_FALSE(contains_bscc(e5, levels(5, {0, 2, 4})));
  CHECK(contains_bscc(e5, Subspace<double>::full(5)));

  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    const auto e = qmc::testing::random_channel(3, 2, rng);
    CHECK(contains_bscc(e, Subspace<double>::full(3)));
  }
}

#include "galjac/theorems.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace galjac;

namespace {

using E = GroupRingElement;

std::string dump(const VerificationReport& r) {
  std::string s = r.instance;
  for (const auto& f : r.failures) s += "\n  failed: " + f;
  for (std::size_t i = 0; i < r.ideals.size(); ++i) s += "\n  " + r.labels[i] + " = " + r.ideals[i].to_string();
  return s;
}

}  // namespace

TEST(MainTheorem, LoopDoubleCover) {
  auto c2 = make_group({2});
  const auto vg = make_voltage_graph(Graph::from_edges(1, {{0, 0}}), c2, {{1}});
  const auto r = verify_main_theorem(vg);
  EXPECT_TRUE(r.ok()) << dump(r);
  // Rbar = Z, Zbar = 4, shift = (1/2), so the ideal is (2)
  EXPECT_EQ(r.ideals[0], IdealLattice::from_generators(c2, RingTag::Quotient, {E::integer(c2, RingTag::Quotient, 2)}));
}

TEST(MainTheorem, SmallCorpus) {
  std::mt19937_64 rng(101);
  for (const auto& g : corpus_groups())
    for (int t = 0; t < 4; ++t) {
      const auto r = verify_main_theorem(random_voltage_graph(g, rng));
      EXPECT_TRUE(r.ok()) << dump(r);
    }
}

TEST(MainTheorem, RejectsBadInput) {
  EXPECT_THROW(verify_main_theorem(make_voltage_graph(Graph::from_edges(1, {{0, 0}}), make_group({3}), {{0}})),
               std::invalid_argument);
  EXPECT_THROW(verify_main_theorem(VoltageGraph(Graph::from_edges(1, {{0, 0}}), make_group({}), {0})),
               std::invalid_argument);
}

TEST(Duality, TrivialActionAndCorpus) {
  // trivial action: Fitt is iota-invariant on its own
  auto c3 = make_group({3});
  GammaModule m(c3, {Int(3)}, {IntMatrix::identity(1)});
  const auto f = module_fitting_ideal(m, RingTag::Quotient);
  EXPECT_EQ(f, f.iota());
  EXPECT_EQ(module_fitting_ideal(pontryagin_dual(m), RingTag::Quotient), f);

  std::mt19937_64 rng(103);
  for (const auto& g : {make_group({3}), make_group({4}), make_group({5}), make_group({2, 2})})
    for (int t = 0; t < 3; ++t) {
      const auto r = verify_duality(random_voltage_graph(g, rng));
      EXPECT_TRUE(r.passed(kDualInvariantFactors)) << dump(r);
      EXPECT_TRUE(r.passed(kDualFullRing)) << dump(r);
      EXPECT_TRUE(r.passed(kSelfDualFullRing)) << dump(r);
      EXPECT_TRUE(r.passed(kQuotientIotaInvariant)) << dump(r);
    }
}

TEST(Duality, QuotientRingStatementCanFail) {
  // Jac[N] and Jac/NJac have different Fitting ideals here, so the dual of
  // Jac/NJac does not have the involuted Fitting ideal of Jac/NJac.
  auto g = make_group({2, 2});
  const auto vg = make_voltage_graph(Graph::from_edges(3, {{0, 0}, {0, 1}, {0, 2}, {2, 0}}), g,
                                     {{0, 1}, {1, 0}, {0, 0}, {1, 1}});
  const auto r = verify_duality(vg);
  EXPECT_TRUE(r.passed(kDualFullRing));
  EXPECT_TRUE(r.passed(kSelfDualFullRing));
  EXPECT_FALSE(r.passed(kDualQuotientRing)) << dump(r);
  const GammaModule jac = jacobian_module(vg);
  EXPECT_NE(module_fitting_ideal(norm_kernel_submodule(jac), RingTag::Quotient),
            module_fitting_ideal(quotient_by_norm(jac), RingTag::Quotient));
}

TEST(Duality, CyclicModules) {
  // Fitt(Rbar/(x))^dual = (iota x)
  std::mt19937_64 rng(107);
  auto c5 = make_group({5});
  for (int t = 0; t < 5; ++t) {
    std::vector<Int> c(5);
    for (auto& x : c) x = static_cast<long>(rng() % 5) - 2;
    const E x(c5, RingTag::Quotient, c);
    const GammaModule m = module_from_presentation(c5, RingTag::Quotient, {{x}}, 1);
    if (!m.finite()) continue;
    EXPECT_EQ(module_fitting_ideal(pontryagin_dual(m), RingTag::Quotient),
              IdealLattice::from_generators(c5, RingTag::Quotient, {x.iota()}));
    EXPECT_EQ(module_fitting_ideal(pontryagin_dual(m, false), RingTag::Quotient),
              IdealLattice::from_generators(c5, RingTag::Quotient, {x}));
  }
}

TEST(NormIdentities, Examples) {
  auto c2 = make_group({2});
  EXPECT_TRUE(verify_norm_identities(make_voltage_graph(Graph::from_edges(1, {{0, 0}}), c2, {{1}})).ok());
  // banana double covers
  for (std::size_t k = 2; k <= 4; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> e(k, {0, 1});
    std::vector<std::size_t> v(k, 0);
    v[0] = 1;
    const auto r = verify_norm_identities(VoltageGraph(Graph::from_edges(2, e), c2, v));
    EXPECT_TRUE(r.ok()) << dump(r);
  }
  EXPECT_THROW(verify_norm_identities(make_voltage_graph(Graph::from_edges(1, {{0, 0}}), c2, {{0}})),
               std::invalid_argument);
  std::mt19937_64 rng(109);
  for (const auto& g : corpus_groups())
    for (int t = 0; t < 3; ++t) EXPECT_TRUE(verify_norm_identities(random_voltage_graph(g, rng)).ok());
}

TEST(Corpus, GeneratorIsSeededAndConnected) {
  std::mt19937_64 a(5), b(5);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_voltage_graph(make_group({2, 2}), a), y = random_voltage_graph(make_group({2, 2}), b);
    EXPECT_EQ(describe(x), describe(y));
    EXPECT_TRUE(derived_graph(x).graph.is_connected());
    EXPECT_LE(x.base().vertex_count(), 3u);
    EXPECT_LE(x.base().edge_count(), 4u);
  }
}

TEST(Duality, DualOfNormQuotientIsTwistedNormKernel) {
  // (M / NM)^dual = (M^dual)[N], and M^dual is M with the inverted action
  std::mt19937_64 rng(113);
  for (const auto& g : {make_group({3}), make_group({4}), make_group({2, 2})})
    for (int t = 0; t < 4; ++t) {
      const auto vg = random_voltage_graph(g, rng);
      const GammaModule jac = jacobian_module(vg);
      const GammaModule ker = norm_kernel_submodule(jac);
      EXPECT_EQ(ker.order(), quotient_by_norm(jac).order());
      const auto lhs = module_fitting_ideal(pontryagin_dual(quotient_by_norm(jac)), RingTag::Quotient);
      const auto rhs = module_fitting_ideal(ker, RingTag::Quotient).iota();
      EXPECT_EQ(lhs, rhs) << describe(vg);
    }
}

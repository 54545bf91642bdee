#include "galjac/theorems.hpp"
#include "galjac/zeta.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace galjac;

namespace {

using E = GroupRingElement;

GroupRingPoly poly(const GroupPtr& g, std::vector<E> c) { return GroupRingPoly(E(g, RingTag::Full), std::move(c)); }
E integer(const GroupPtr& g, long n) { return E::integer(g, RingTag::Full, n); }

VoltageGraph bouquet(const GroupPtr& g, std::size_t loops, std::vector<std::size_t> volt) {
  return VoltageGraph(Graph::from_edges(1, std::vector<std::pair<std::size_t, std::size_t>>(loops, {0, 0})), g,
                      std::move(volt));
}

}  // namespace

TEST(ZetaPolynomial, LoopWithNontrivialVoltage) {
  auto c2 = make_group({2});
  const auto vg = bouquet(c2, 1, {1});
  const E s = E::basis(c2, RingTag::Full, 1);
  EXPECT_EQ(zeta_polynomial(vg), poly(c2, {integer(c2, 1), s * Int(-2), integer(c2, 1)}));
}

TEST(ZetaPolynomial, TriangleTrivialGroup) {
  auto triv = make_group({});
  const VoltageGraph vg(Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}), triv, {0, 0, 0});
  const auto z = zeta_polynomial(vg);
  EXPECT_TRUE(z.evaluate(integer(triv, 1)).is_zero());
  // det(1 - A u + u^2) for the 3-cycle: (1 - u)^2 (1 + u + u^2)^2
  const auto a = poly(triv, {integer(triv, 1), integer(triv, -1)});
  const auto b = poly(triv, {integer(triv, 1), integer(triv, 1), integer(triv, 1)});
  EXPECT_EQ(z, a * a * b * b);
  EXPECT_TRUE(verify_three_term(vg, 10).ok());
}

TEST(ZetaPolynomial, EvaluationAndDegree) {
  std::mt19937_64 rng(211);
  for (const auto& g : corpus_groups())
    for (int t = 0; t < 3; ++t) {
      const auto vg = random_voltage_graph(g, rng);
      const auto z = zeta_polynomial(vg);
      EXPECT_EQ(z.evaluate(integer(g, 1)), z_element(vg)) << describe(vg);
      EXPECT_LE(z.degree(), static_cast<long>(2 * vg.base().vertex_count()));
      long min_deg = 1000;
      Int lead = 1;
      for (std::size_t v = 0; v < vg.base().vertex_count(); ++v) {
        min_deg = std::min(min_deg, vg.base().degree(v));
        lead *= vg.base().degree(v) - 1;
      }
      if (min_deg >= 2) {
        EXPECT_EQ(z.coeff(2 * vg.base().vertex_count()), integer(g, 1) * lead);
      }
    }
}

TEST(EulerProduct, TreeIsOne) {
  auto c3 = make_group({3});
  const VoltageGraph vg(Graph::from_edges(3, {{0, 1}, {1, 2}}), c3, {1, 2});
  const auto one = poly(c3, {integer(c3, 1)});
  EXPECT_TRUE(primitive_cycles(vg.base(), 8).empty());
  EXPECT_EQ(euler_product_truncation(vg, 8), one);
  EXPECT_EQ(edge_matrix_zeta(vg, 8), one);
}

TEST(EulerProduct, SingleLoopTrivialGroup) {
  auto triv = make_group({});
  const auto vg = bouquet(triv, 1, {0});
  EXPECT_EQ(primitive_cycles(vg.base(), 6).size(), 2u);
  const auto sq = poly(triv, {integer(triv, 1), integer(triv, -2), integer(triv, 1)});
  EXPECT_EQ(euler_reciprocal(vg, 2), sq);
  EXPECT_EQ(edge_matrix_zeta(vg, 2), sq);
  EXPECT_EQ(euler_product_truncation(vg, 2).mul_trunc(sq, 3), poly(triv, {integer(triv, 1)}));
}

TEST(EulerProduct, PrimitiveCountsOnTwoLoops) {
  // closed reduced walks of length m on two loops: 3^m + 1 + (1 + (-1)^m),
  // and that count is sum over d | m of d * (primitive classes of length d)
  const Graph x = Graph::from_edges(1, {{0, 0}, {0, 0}});
  std::map<std::size_t, long> by_len;
  for (const auto& p : primitive_cycles(x, 6)) ++by_len[p.size()];
  for (long m = 1; m <= 6; ++m) {
    long pw = 1;
    for (long i = 0; i < m; ++i) pw *= 3;
    const long closed = pw + 1 + (m % 2 == 0 ? 2 : 0);
    long s = 0;
    for (long d = 1; d <= m; ++d)
      if (m % d == 0) s += d * by_len[static_cast<std::size_t>(d)];
    EXPECT_EQ(s, closed) << "m=" << m;
  }
}

TEST(EulerProduct, TruncationCap) {
  auto c2 = make_group({2});
  const auto vg = bouquet(c2, 1, {1});
  EXPECT_THROW(euler_product_truncation(vg, 13), ResourceError);
  EXPECT_THROW(verify_three_term(vg, 13), ResourceError);
  EXPECT_THROW(edge_matrix_zeta(vg, 13), ResourceError);
}

TEST(ThreeTerm, BouquetFamily) {
  for (long n = 2; n <= 6; ++n) {
    auto g = make_group({n});
    for (std::size_t loops = 1; loops <= 2; ++loops) {
      std::vector<std::size_t> v(loops, 1);
      const auto r = verify_three_term(bouquet(g, loops, v), 8);
      EXPECT_TRUE(r.ok()) << n << " " << loops << (r.failures.empty() ? "" : r.failures[0]);
    }
  }
}

TEST(ThreeTerm, RandomCorpus) {
  std::mt19937_64 rng(223);
  for (const auto& g : {make_group({}), make_group({2}), make_group({3}), make_group({6}), make_group({2, 2})})
    for (int t = 0; t < 3; ++t) {
      VoltageGraph vg;
      if (g->size() == 1) {
        // any connected base will do for the trivial group
        vg = random_voltage_graph(make_group({2}), rng);
        vg = VoltageGraph(vg.base(), g, std::vector<std::size_t>(vg.base().edge_count(), 0));
      } else {
        vg = random_voltage_graph(g, rng);
      }
      const auto r = verify_three_term(vg, 7);
      EXPECT_TRUE(r.ok()) << describe(vg) << (r.failures.empty() ? "" : " " + r.failures[0]);
    }
}

TEST(ThreeTerm, InvolutionOnReversedVoltages) {
  std::mt19937_64 rng(227);
  for (const auto& g : {make_group({3}), make_group({5}), make_group({2, 4})})
    for (int t = 0; t < 3; ++t) {
      const auto vg = random_voltage_graph(g, rng);
      std::vector<std::size_t> inv;
      for (std::size_t x : vg.edge_voltages()) inv.push_back(g->inv(x));
      const VoltageGraph rev(vg.base(), g, inv);
      const auto a = euler_product_truncation(vg, 6).map([](const E& x) { return x.iota(); });
      EXPECT_EQ(a, euler_product_truncation(rev, 6)) << describe(vg);
      EXPECT_EQ(a.coeff(0), integer(g, 1));
    }
}

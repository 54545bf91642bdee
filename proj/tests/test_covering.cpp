#include "galjac/covering.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace galjac;

namespace {

using E = GroupRingElement;

Graph bouquet(std::size_t loops) {
  std::vector<std::pair<std::size_t, std::size_t>> e(loops, {0, 0});
  return Graph::from_edges(1, e);
}

VoltageGraph random_cover(const GroupPtr& g, std::mt19937_64& rng, bool connected = true) {
  while (true) {
    const std::size_t nv = 1 + rng() % 3, ne = nv - 1 + rng() % 3 + 1;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < ne; ++i) edges.emplace_back(rng() % nv, rng() % nv);
    Graph x = Graph::from_edges(nv, edges);
    if (!x.is_connected()) continue;
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < ne; ++i) v.push_back(rng() % g->size());
    VoltageGraph vg(x, g, v);
    if (connected && !connectivity_criterion(vg)) continue;
    return vg;
  }
}

}  // namespace

TEST(Derived, LoopGivesCycle) {
  for (long n : {2, 3, 5, 8}) {
    auto g = make_group({n});
    VoltageGraph vg = make_voltage_graph(bouquet(1), g, {{1}});
    const auto d = derived_graph(vg);
    EXPECT_EQ(d.graph.vertex_count(), static_cast<std::size_t>(n));
    EXPECT_TRUE(d.graph.is_connected());
    for (std::size_t v = 0; v < d.graph.vertex_count(); ++v) EXPECT_EQ(d.graph.degree(v), 2);
    EXPECT_EQ(jacobian(d.graph).order(), n);
  }
}

TEST(Derived, TrivialVoltagesGiveCopies) {
  auto g = make_group({2, 3});
  Graph x = Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}, {0, 0}});
  VoltageGraph vg(x, g, {0, 0, 0, 0});
  const auto d = derived_graph(vg);
  EXPECT_EQ(d.graph.vertex_count(), 6u * 3u);
  EXPECT_EQ(d.graph.component_count(), 6u);
  for (const auto& j : component_jacobians(d.graph)) EXPECT_EQ(j, jacobian(x));
  EXPECT_FALSE(connectivity_criterion(vg));
}

TEST(Derived, ActionCommutesWithProjection) {
  std::mt19937_64 rng(3);
  auto g = make_group({2, 2});
  for (int t = 0; t < 10; ++t) {
    const auto vg = random_cover(g, rng, false);
    const auto d = derived_graph(vg);
    const std::size_t n = g->size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t e = 0; e < d.graph.dart_count(); ++e) {
        const std::size_t f = d.dart_action[a][e];
        EXPECT_EQ(f / n, e / n);
        EXPECT_EQ(d.graph.src(f), d.vertex_action[a][d.graph.src(e)]);
        EXPECT_EQ(d.graph.dst(f), d.vertex_action[a][d.graph.dst(e)]);
        EXPECT_EQ(d.graph.partner(f), d.dart_action[a][d.graph.partner(e)]);
      }
  }
}

TEST(Derived, ConnectivityCriterion) {
  EXPECT_TRUE(connectivity_criterion(make_voltage_graph(bouquet(1), make_group({5}), {{1}})));
  EXPECT_FALSE(connectivity_criterion(make_voltage_graph(bouquet(1), make_group({5}), {{0}})));
  EXPECT_TRUE(connectivity_criterion(make_voltage_graph(bouquet(2), make_group({27}), {{1}, {0}})));
  EXPECT_FALSE(connectivity_criterion(make_voltage_graph(bouquet(2), make_group({4}), {{2}, {0}})));
  std::mt19937_64 rng(17);
  for (const auto& g : {make_group({2}), make_group({4}), make_group({2, 2}), make_group({3, 3})})
    for (int t = 0; t < 30; ++t) {
      const auto vg = random_cover(g, rng, false);
      EXPECT_EQ(connectivity_criterion(vg), derived_graph(vg).graph.is_connected());
    }
}

TEST(Derived, NonAbelianVoltages) {
  auto s3 = std::make_shared<const CayleyGroup>(CayleyGroup::symmetric3());
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const std::size_t nv = 1 + rng() % 3, ne = nv + rng() % 2;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i + 1 < nv; ++i) edges.emplace_back(i, i + 1);
    while (edges.size() < ne) edges.emplace_back(rng() % nv, rng() % nv);
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < ne; ++i) v.push_back(rng() % 6);
    VoltageGraphT<CayleyGroup> vg(Graph::from_edges(nv, edges), s3, v);
    const auto d = derived_graph(vg);
    EXPECT_EQ(d.graph.vertex_count(), 6 * nv);
    EXPECT_EQ(connectivity_criterion(vg), d.graph.is_connected());
  }
}

TEST(EquivariantLaplacian, Examples) {
  for (long n : {2, 3, 6}) {
    auto g = make_group({n});
    const auto c = equivariant_laplacian(make_voltage_graph(bouquet(1), g, {{1}}));
    const E want = E::integer(g, RingTag::Full, 2) - sigma(g, 0) - E::basis(g, RingTag::Full, g->inv(g->generator(0)));
    EXPECT_EQ(c[0][0], want);
  }
  // a loop with trivial voltage contributes 2 - 1 - 1 = 0
  auto g = make_group({3});
  EXPECT_TRUE(equivariant_laplacian(make_voltage_graph(bouquet(1), g, {{0}}))[0][0].is_zero());
  // trivial group: ordinary Laplacian
  auto triv = make_group({});
  Graph x = Graph::from_edges(3, {{0, 1}, {1, 2}, {1, 2}, {2, 2}});
  const auto c = equivariant_laplacian(VoltageGraph(x, triv, {0, 0, 0, 0}));
  const IntMatrix lx = x.laplacian();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(c[i][j].coeff(0), lx(i, j));
}

TEST(EquivariantLaplacian, RegularRepresentationMatchesDerived) {
  std::mt19937_64 rng(29);
  for (const auto& g : {make_group({2}), make_group({3}), make_group({2, 2}), make_group({4}), make_group({2, 3})})
    for (int t = 0; t < 15; ++t) EXPECT_TRUE(laplacian_matches_derived(random_cover(g, rng, false)));
}

TEST(ZElement, Examples) {
  auto c2 = make_group({2});
  EXPECT_EQ(z_element(make_voltage_graph(bouquet(1), c2, {{1}})),
            E::integer(c2, RingTag::Full, 2) - sigma(c2, 0) * Int(2));
  auto triv = make_group({});
  EXPECT_TRUE(z_element(VoltageGraph(Graph::from_edges(2, {{0, 1}, {0, 1}}), triv, {0, 0})).is_zero());
  std::mt19937_64 rng(31);
  for (const auto& g : {make_group({3}), make_group({2, 2})})
    for (int t = 0; t < 10; ++t) {
      const auto vg = random_cover(g, rng);
      EXPECT_EQ(z_element(vg).augmentation(), 0);
      EXPECT_EQ(z_element(vg).iota(), z_element(vg));
    }
}

TEST(ZElement, ParallelEdgeDoubleCover) {
  // P2 with a doubled edge, one strand carrying the voltage: Y = C4
  auto c2 = make_group({2});
  VoltageGraph vg(Graph::from_edges(2, {{0, 1}, {0, 1}}), c2, {0, 1});
  const auto y = derived_graph(vg).graph;
  EXPECT_EQ(jacobian(y).order(), 4);
  EXPECT_TRUE(laplacian_matches_derived(vg));
  // Z = det [[2, -1-s], [-1-s, 2]] = 4 - (1+s)^2 = 2 - 2s
  EXPECT_EQ(z_element(vg), E::integer(c2, RingTag::Full, 2) - sigma(c2, 0) * Int(2));
}

TEST(PicardModule, CycleCovers) {
  for (long n : {2, 3, 4, 6}) {
    auto g = make_group({n});
    const auto vg = make_voltage_graph(bouquet(1), g, {{1}});
    const GammaModule pic = picard_module(vg);
    EXPECT_EQ(pic.free_rank(), 1u);
    EXPECT_TRUE(pic.is_valid());
    const GammaModule jac = jacobian_module(vg);
    EXPECT_EQ(jac.structure().invariant_factors, std::vector<Int>{Int(n)});
    // sigma^n = 1; the rotation is even trivial since v_{i+1} - v_i = v_i - v_{i-1} in Jac
    IntMatrix p = IntMatrix::identity(jac.dim());
    for (long k = 0; k < n; ++k) p = jac.reduce(jac.action()[0] * p);
    EXPECT_EQ(p, IntMatrix::identity(1));
    EXPECT_EQ(jac.action()[0], IntMatrix::identity(1));
  }
}

TEST(PicardModule, TrivialCoverAndRandom) {
  auto triv = make_group({});
  Graph x = Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}});
  const GammaModule jac = jacobian_module(VoltageGraph(x, triv, {0, 0, 0, 0}));
  EXPECT_EQ(jac.structure(), jacobian(x));
  std::mt19937_64 rng(37);
  for (const auto& g : {make_group({2}), make_group({5}), make_group({2, 2}), make_group({2, 4})})
    for (int t = 0; t < 8; ++t) {
      const auto vg = random_cover(g, rng);
      const GammaModule j = jacobian_module(vg);
      EXPECT_TRUE(j.is_valid());
      EXPECT_EQ(j.order(), spanning_tree_count(derived_graph(vg).graph));
      EXPECT_EQ(j.structure(), jacobian(derived_graph(vg).graph));
    }
  EXPECT_THROW(picard_module(make_voltage_graph(bouquet(1), make_group({3}), {{0}})), std::invalid_argument);
}

TEST(NormQuotient, Examples) {
  auto c2 = make_group({2});
  const auto jac = jacobian_module(make_voltage_graph(bouquet(1), c2, {{1}}));
  EXPECT_EQ(quotient_by_norm(jac).order(), 2);
  EXPECT_EQ(norm_image_order(jac), 1);
  // trivial action: N acts as |G|
  auto c3 = make_group({3});
  GammaModule m(c3, {Int(9), Int(2)}, {IntMatrix::identity(2)});
  EXPECT_EQ(quotient_by_norm(m).structure().invariant_factors, (std::vector<Int>{Int(3)}));
  EXPECT_EQ(norm_image_order(m), 6);
  EXPECT_TRUE(quotient_by_norm(GammaModule::zero(c3)).is_zero());
}

TEST(NormQuotient, NormImageIsBaseJacobian) {
  std::mt19937_64 rng(41);
  for (const auto& g : {make_group({2}), make_group({3}), make_group({4}), make_group({2, 2}), make_group({6})})
    for (int t = 0; t < 8; ++t) {
      const auto vg = random_cover(g, rng);
      const auto jac = jacobian_module(vg);
      EXPECT_EQ(norm_image_order(jac), jacobian(vg.base()).order());
      EXPECT_EQ(jac.order(), norm_image_order(jac) * quotient_by_norm(jac).order());
    }
}

TEST(Sequence, Cardinalities) {
  auto c2 = make_group({2});
  const auto vg = make_voltage_graph(bouquet(1), c2, {{1}});
  EXPECT_EQ(rbar_picard_module(vg).order(), 4);
  EXPECT_TRUE(sequence_cardinality_check(vg).ok());
  std::mt19937_64 rng(43);
  for (const auto& g : {make_group({2}), make_group({3}), make_group({2, 2}), make_group({2, 3})})
    for (int t = 0; t < 8; ++t) {
      const Report r = sequence_cardinality_check(random_cover(g, rng));
      EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures[0]);
    }
}

TEST(PicardModule, FittingOverFullRingIsZ) {
  std::mt19937_64 rng(47);
  for (const auto& g : {make_group({2}), make_group({3}), make_group({2, 2})})
    for (int t = 0; t < 5; ++t) {
      const auto vg = random_cover(g, rng);
      EXPECT_EQ(module_fitting_ideal(picard_module(vg), RingTag::Full),
                IdealLattice::from_generators(g, RingTag::Full, {z_element(vg)}));
    }
}

TEST(PicardModule, QuotientFunctoriality) {
  // coinvariants of Pic(X(G)) under G' agree with Pic(X(G/G'))
  std::mt19937_64 rng(53);
  for (int t = 0; t < 10; ++t) {
    auto g = make_group({4, 2});
    auto q = make_group({2, 2});
    const auto vg = random_cover(g, rng);
    std::vector<std::size_t> qv;
    for (std::size_t x : vg.edge_voltages()) {
      auto e = g->exponents(x);
      qv.push_back(q->index(e));
    }
    VoltageGraph vq(vg.base(), q, qv);
    if (!connectivity_criterion(vq)) continue;
    const auto pic = picard_module(vg);
    const auto co = coinvariants(pic, {g->pow(g->generator(0), 2)});
    EXPECT_EQ(co.structure(), picard_module(vq).structure());
  }
}

#pragma once

// Voltage graphs, derived graphs with their Galois action, the equivariant
// Laplacian over Z[G], its determinant Z, and Picard / Jacobian groups of
// derived graphs as G-modules.
//
// Derived vertex (h, v) has index v * |G| + h and derived dart (h, e) has
// index e * |G| + h. G acts by left multiplication on the first coordinate.

#include "galjac/fitting.hpp"
#include "galjac/gamma_module.hpp"
#include "galjac/graph.hpp"
#include "galjac/group.hpp"
#include "galjac/group_ring.hpp"
#include "galjac/report.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace galjac {

template <VoltageGroup G>
class VoltageGraphT {
 public:
  VoltageGraphT() = default;
  /// One voltage per edge, in edge_representatives() order; the partner dart
  /// carries the inverse.
  VoltageGraphT(Graph base, std::shared_ptr<const G> group, std::vector<std::size_t> edge_voltages)
      : base_(std::move(base)), group_(std::move(group)), volt_(std::move(edge_voltages)) {
    const auto reps = base_.edge_representatives();
    if (volt_.size() != reps.size()) throw std::invalid_argument("need exactly one voltage per edge");
    for (std::size_t x : volt_)
      if (x >= group_->size()) throw std::out_of_range("voltage is not a group element");
    edge_of_.assign(base_.dart_count(), 0);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      edge_of_[reps[k]] = k;
      edge_of_[base_.partner(reps[k])] = k;
    }
  }

  const Graph& base() const { return base_; }
  const std::shared_ptr<const G>& group() const { return group_; }
  const std::vector<std::size_t>& edge_voltages() const { return volt_; }

  std::size_t voltage(std::size_t dart) const {
    const std::size_t v = volt_[edge_of_.at(dart)];
    return dart < base_.partner(dart) ? v : group_->inv(v);
  }

 private:
  Graph base_;
  std::shared_ptr<const G> group_;
  std::vector<std::size_t> volt_;
  std::vector<std::size_t> edge_of_;
};

using VoltageGraph = VoltageGraphT<FinAbGroup>;

/// Voltages given as exponent vectors on the fixed generators.
inline VoltageGraph make_voltage_graph(Graph base, const GroupPtr& g, const std::vector<std::vector<long>>& exps) {
  std::vector<std::size_t> v;
  for (const auto& e : exps) v.push_back(g->index(e));
  return VoltageGraph(std::move(base), g, std::move(v));
}

struct DerivedGraph {
  Graph graph;
  std::vector<std::vector<std::size_t>> vertex_action;  // [group element][derived vertex]
  std::vector<std::vector<std::size_t>> dart_action;
};

template <VoltageGroup G>
DerivedGraph derived_graph(const VoltageGraphT<G>& vg) {
  const Graph& x = vg.base();
  const G& g = *vg.group();
  const std::size_t n = g.size();
  std::vector<Dart> darts(x.dart_count() * n);
  for (std::size_t e = 0; e < x.dart_count(); ++e)
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t ha = g.mul(h, vg.voltage(e));
      darts[e * n + h] = {x.src(e) * n + h, x.dst(e) * n + ha, x.partner(e) * n + ha};
    }
  DerivedGraph d;
  d.graph = Graph::from_darts(x.vertex_count() * n, std::move(darts));
  d.vertex_action.assign(n, std::vector<std::size_t>(x.vertex_count() * n));
  d.dart_action.assign(n, std::vector<std::size_t>(x.dart_count() * n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
      for (std::size_t h = 0; h < n; ++h) d.vertex_action[a][v * n + h] = v * n + g.mul(a, h);
    for (std::size_t e = 0; e < x.dart_count(); ++e)
      for (std::size_t h = 0; h < n; ++h) d.dart_action[a][e * n + h] = e * n + g.mul(a, h);
  }
  return d;
}

/// Voltages of the fundamental cycles (one per edge outside a BFS spanning tree).
template <VoltageGroup G>
std::vector<std::size_t> cycle_voltages(const VoltageGraphT<G>& vg) {
  const Graph& x = vg.base();
  const G& g = *vg.group();
  if (!x.is_connected()) throw std::invalid_argument("base graph must be connected");
  const std::size_t none = x.dart_count();
  std::vector<std::size_t> pot(x.vertex_count(), g.identity());
  std::vector<std::size_t> via(x.vertex_count(), none);
  std::vector<bool> seen(x.vertex_count(), false);
  std::vector<std::vector<std::size_t>> out(x.vertex_count());
  for (std::size_t e = 0; e < x.dart_count(); ++e) out[x.src(e)].push_back(e);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t v = queue[q];
    for (std::size_t e : out[v]) {
      const std::size_t w = x.dst(e);
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = e;
      pot[w] = g.mul(pot[v], vg.voltage(e));
      queue.push_back(w);
    }
  }
  std::vector<std::size_t> cyc;
  for (std::size_t e : x.edge_representatives()) {
    if (via[x.dst(e)] == e || via[x.src(e)] == x.partner(e)) continue;  // tree edge
    cyc.push_back(g.mul(g.mul(pot[x.src(e)], vg.voltage(e)), g.inv(pot[x.dst(e)])));
  }
  return cyc;
}

/// The derived graph is connected iff the fundamental cycle voltages generate G.
template <VoltageGroup G>
bool connectivity_criterion(const VoltageGraphT<G>& vg) {
  const auto in = generated_subgroup(*vg.group(), cycle_voltages(vg));
  for (bool b : in)
    if (!b) return false;
  return true;
}

/// Entry (v, w) = deg(v) delta_vw - sum over darts e: v -> w of alpha(e).
inline GroupRingMatrix equivariant_laplacian(const VoltageGraph& vg, RingTag tag = RingTag::Full) {
  const Graph& x = vg.base();
  const GroupPtr& g = vg.group();
  const std::size_t n = x.vertex_count();
  GroupRingMatrix c(n, std::vector<GroupRingElement>(n, GroupRingElement(g, tag)));
  for (std::size_t v = 0; v < n; ++v) c[v][v] = GroupRingElement::integer(g, tag, x.degree(v));
  for (std::size_t e = 0; e < x.dart_count(); ++e)
    c[x.src(e)][x.dst(e)] -= GroupRingElement::basis(g, tag, vg.voltage(e));
  return c;
}

/// The Laplacian of the derived graph is the regular representation of the
/// transposed equivariant Laplacian: entry ((h', w), (h, v)) is the
/// coefficient of C[v][w] at h' h^{-1}.
inline bool laplacian_matches_derived(const VoltageGraph& vg) {
  const auto c = equivariant_laplacian(vg);
  const IntMatrix ly = derived_graph(vg).graph.laplacian();
  const FinAbGroup& g = *vg.group();
  const std::size_t n = g.size(), nv = vg.base().vertex_count();
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t w = 0; w < nv; ++w)
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t hp = 0; hp < n; ++hp)
          if (ly(w * n + hp, v * n + h) != c[v][w].coeff(g.mul(hp, g.inv(h)))) return false;
  return true;
}

inline GroupRingElement z_element(const VoltageGraph& vg, RingTag tag = RingTag::Full) {
  return det_group_ring(equivariant_laplacian(vg, tag), vg.group(), tag);
}

/// Permutation matrices of the fixed generators on Div of the derived graph.
inline std::vector<IntMatrix> divisor_action(const VoltageGraph& vg) {
  const FinAbGroup& g = *vg.group();
  const std::size_t n = g.size(), nv = vg.base().vertex_count() * n;
  std::vector<IntMatrix> out;
  for (std::size_t l = 0; l < g.rank(); ++l) {
    IntMatrix p(nv, nv);
    for (std::size_t v = 0; v < vg.base().vertex_count(); ++v)
      for (std::size_t h = 0; h < n; ++h) p(v * n + g.mul(g.generator(l), h), v * n + h) = 1;
    out.push_back(std::move(p));
  }
  return out;
}

inline void require_connected_cover(const VoltageGraph& vg) {
  if (!vg.base().is_connected()) throw std::invalid_argument("base graph must be connected");
  if (!connectivity_criterion(vg)) throw std::invalid_argument("derived graph is disconnected");
}

inline GammaModule picard_module(const VoltageGraph& vg) {
  require_connected_cover(vg);
  return cokernel_module(vg.group(), derived_graph(vg).graph.laplacian(), divisor_action(vg));
}

inline GammaModule jacobian_module(const VoltageGraph& vg) {
  const GammaModule pic = picard_module(vg);
  if (pic.free_rank() != 1) throw std::logic_error("Picard group of a connected graph has rank one");
  return torsion_submodule(pic);
}

/// Rbar tensor Pic(Y), as the cokernel of the equivariant Laplacian over Rbar.
inline GammaModule rbar_picard_module(const VoltageGraph& vg) {
  if (vg.group()->size() < 2) throw std::invalid_argument("Z[G]/(N) needs a nontrivial group");
  const auto c = equivariant_laplacian(vg, RingTag::Quotient);
  return module_from_presentation(vg.group(), RingTag::Quotient, c, vg.base().vertex_count());
}

/// M / (g - 1)M for g in the listed elements.
inline GammaModule coinvariants(const GammaModule& m, const std::vector<std::size_t>& elements) {
  const auto mats = m.element_matrices();
  IntMatrix rel = structure_relations(m);
  for (std::size_t x : elements) rel = hcat(rel, mats[x] - IntMatrix::identity(m.dim()));
  return cokernel_module(m.group(), rel, m.action());
}

/// Cardinality identities around Rbar tensor Pic(Y):
/// #(Rbar Pic) = #(Jac / N Jac) #G and #Jac(X) #(Rbar Pic) = #Jac(Y) #G.
inline Report sequence_cardinality_check(const VoltageGraph& vg) {
  Report r;
  r.claim = "cardinalities of the Rbar Picard sequence";
  const Int order(static_cast<unsigned long>(vg.group()->size()));
  const GammaModule pic = picard_module(vg);
  const GammaModule jac = torsion_submodule(pic);
  const GammaModule rpic = rbar_picard_module(vg);
  const GammaModule pic_n = quotient_by_norm(pic);
  ++r.cases;
  if (!rpic.finite() || !(rpic.structure() == pic_n.structure())) {
    r.fail("coker of the Rbar Laplacian differs from Pic / N Pic");
    return r;
  }
  const Int jx = jacobian(vg.base()).order();
  const Int jy = jac.order();
  const Int jyn = quotient_by_norm(jac).order();
  ++r.cases;
  if (rpic.order() != jyn * order)
    r.fail("#(Rbar Pic) = " + rpic.order().get_str() + " but #(Jac/NJac) #G = " + Int(jyn * order).get_str());
  ++r.cases;
  if (jx * rpic.order() != jy * order)
    r.fail("#Jac(X) #(Rbar Pic) = " + Int(jx * rpic.order()).get_str() + " but #Jac(Y) #G = " +
           Int(jy * order).get_str());
  return r;
}

}  // namespace galjac

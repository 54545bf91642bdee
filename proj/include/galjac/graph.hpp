#pragma once

// Finite multigraphs in the dart (half-edge) formalism.
//
// Each undirected edge k of an edge list becomes the darts 2k (u -> v) and
// 2k+1 (v -> u); a loop gives two darts at the same vertex. The partner map
// is the fixed-point-free involution reversing a dart.

#include "galjac/integer.hpp"
#include "galjac/matrix.hpp"
#include "galjac/normal_form.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galjac {

struct Dart {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::size_t partner = 0;
};

class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    if (vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
    Graph g;
    g.n_ = vertices;
    g.darts_.reserve(2 * edges.size());
    for (const auto& [u, v] : edges) {
      if (u >= vertices || v >= vertices)
        throw std::out_of_range("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
      const std::size_t k = g.darts_.size();
      g.darts_.push_back({u, v, k + 1});
      g.darts_.push_back({v, u, k});
    }
    return g;
  }

  /// Raw dart input; validates the involution.
  static Graph from_darts(std::size_t vertices, std::vector<Dart> darts) {
    if (vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (darts.size() % 2) throw std::invalid_argument("odd number of darts");
    for (std::size_t e = 0; e < darts.size(); ++e) {
      const Dart& d = darts[e];
      if (d.src >= vertices || d.dst >= vertices) throw std::out_of_range("dart endpoint out of range");
      if (d.partner >= darts.size()) throw std::invalid_argument("dart partner out of range");
      if (d.partner == e) throw std::invalid_argument("dart is its own partner");
      const Dart& p = darts[d.partner];
      if (p.partner != e) throw std::invalid_argument("partner map is not an involution");
      if (p.src != d.dst || p.dst != d.src) throw std::invalid_argument("partner dart has mismatched endpoints");
    }
    Graph g;
    g.n_ = vertices;
    g.darts_ = std::move(darts);
    return g;
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t dart_count() const { return darts_.size(); }
  std::size_t edge_count() const { return darts_.size() / 2; }
  const std::vector<Dart>& darts() const { return darts_; }
  const Dart& dart(std::size_t e) const { return darts_.at(e); }
  std::size_t src(std::size_t e) const { return darts_[e].src; }
  std::size_t dst(std::size_t e) const { return darts_[e].dst; }
  std::size_t partner(std::size_t e) const { return darts_[e].partner; }

  /// One representative dart per undirected edge (the one with smaller id).
  std::vector<std::size_t> edge_representatives() const {
    std::vector<std::size_t> reps;
    for (std::size_t e = 0; e < darts_.size(); ++e)
      if (e < darts_[e].partner) reps.push_back(e);
    return reps;
  }

  long degree(std::size_t v) const {
    long d = 0;
    for (const auto& x : darts_) d += x.src == v;
    return d;
  }

  IntMatrix adjacency() const {
    IntMatrix a(n_, n_);
    for (const auto& x : darts_) a(x.src, x.dst) += 1;
    return a;
  }
  IntMatrix degree_matrix() const {
    IntMatrix d(n_, n_);
    for (const auto& x : darts_) d(x.src, x.src) += 1;
    return d;
  }
  IntMatrix laplacian() const { return degree_matrix() - adjacency(); }

  /// Component id per vertex, ids in order of first appearance.
  std::vector<std::size_t> components() const {
    std::vector<std::vector<std::size_t>> out(n_);
    for (const auto& x : darts_) out[x.src].push_back(x.dst);
    const std::size_t none = n_;
    std::vector<std::size_t> comp(n_, none);
    std::size_t next = 0;
    for (std::size_t s = 0; s < n_; ++s) {
      if (comp[s] != none) continue;
      std::vector<std::size_t> stack{s};
      comp[s] = next;
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : out[v])
          if (comp[w] == none) {
            comp[w] = next;
            stack.push_back(w);
          }
      }
      ++next;
    }
    return comp;
  }

  std::size_t component_count() const {
    const auto c = components();
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  }

  bool is_connected() const { return component_count() == 1; }

 private:
  std::size_t n_ = 0;
  std::vector<Dart> darts_;
};

/// Finitely generated abelian group Z^r + Z/d_1 + ... + Z/d_k with d_i | d_{i+1}, d_i >= 2.
struct AbelianGroupStructure {
  std::vector<Int> invariant_factors;
  std::size_t free_rank = 0;

  bool finite() const { return free_rank == 0; }
  Int order() const {
    if (!finite()) throw std::domain_error("order of an infinite abelian group");
    return product(invariant_factors);
  }
  bool trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  friend bool operator==(const AbelianGroupStructure&, const AbelianGroupStructure&) = default;

  /// Structure of Z^n / image, read from Smith invariants of an n-row relation matrix.
  static AbelianGroupStructure from_smith(const std::vector<Int>& invariants, std::size_t n) {
    AbelianGroupStructure a;
    std::size_t nonzero = 0;
    for (const auto& d : invariants) {
      if (d == 0) continue;
      ++nonzero;
      if (d != 1) a.invariant_factors.push_back(d);
    }
    a.free_rank = n - nonzero;
    return a;
  }
};

/// Picard group: cokernel of the Laplacian on Div.
inline AbelianGroupStructure picard_structure(const Graph& g) {
  return AbelianGroupStructure::from_smith(smith_normal_form(g.laplacian()).invariants, g.vertex_count());
}

inline AbelianGroupStructure jacobian(const Graph& g) {
  if (!g.is_connected()) throw std::invalid_argument("Jacobian requires a connected graph");
  AbelianGroupStructure pic = picard_structure(g);
  if (pic.free_rank != 1) throw std::logic_error("connected graph Laplacian must have corank one");
  pic.free_rank = 0;
  return pic;
}

/// Jacobian of each connected component, in component-id order.
inline std::vector<AbelianGroupStructure> component_jacobians(const Graph& g) {
  const auto comp = g.components();
  const std::size_t k = g.component_count();
  std::vector<AbelianGroupStructure> out;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::size_t> index(g.vertex_count(), 0);
    std::size_t m = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (comp[v] == c) index[v] = m++;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t e : g.edge_representatives())
      if (comp[g.src(e)] == c) edges.emplace_back(index[g.src(e)], index[g.dst(e)]);
    out.push_back(jacobian(Graph::from_edges(m, edges)));
  }
  return out;
}

namespace detail {

struct RollbackUnionFind {
  std::vector<std::size_t> parent, size;
  std::vector<std::pair<std::size_t, std::size_t>> history;

  explicit RollbackUnionFind(std::size_t n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    history.emplace_back(a, b);
    return true;
  }
  void undo() {
    auto [a, b] = history.back();
    history.pop_back();
    parent[b] = b;
    size[a] -= size[b];
  }
};

inline void count_trees(const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::size_t i, std::size_t need,
                        RollbackUnionFind& uf, unsigned long long& count) {
  if (need == 0) {
    ++count;
    return;
  }
  if (edges.size() - i < need) return;
  if (uf.unite(edges[i].first, edges[i].second)) {
    count_trees(edges, i + 1, need - 1, uf, count);
    uf.undo();
  }
  count_trees(edges, i + 1, need, uf, count);
}

}  // namespace detail

inline constexpr std::size_t kTreeEnumerationEdgeLimit = 16;

/// Spanning trees by backtracking over edge subsets (loops never participate).
inline Int spanning_tree_count_enumeration(const Graph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t e : g.edge_representatives())
    if (g.src(e) != g.dst(e)) edges.emplace_back(g.src(e), g.dst(e));
  if (edges.size() > kTreeEnumerationEdgeLimit) throw ResourceError("too many edges for tree enumeration");
  detail::RollbackUnionFind uf(g.vertex_count());
  unsigned long long count = 0;
  detail::count_trees(edges, 0, g.vertex_count() - 1, uf, count);
  return Int(static_cast<unsigned long>(count));
}

/// Spanning trees as a principal minor of the Laplacian.
inline Int spanning_tree_count_determinant(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const IntMatrix L = g.laplacian();
  IntMatrix m(n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) m(i - 1, j - 1) = L(i, j);
  return determinant(m);
}

inline Int spanning_tree_count(const Graph& g) {
  if (!g.is_connected()) throw std::invalid_argument("spanning trees require a connected graph");
  const Int det = spanning_tree_count_determinant(g);
  std::size_t plain = 0;
  for (std::size_t e : g.edge_representatives()) plain += g.src(e) != g.dst(e);
  if (plain <= kTreeEnumerationEdgeLimit) {
    const Int en = spanning_tree_count_enumeration(g);
    if (en != det) throw std::logic_error("spanning tree enumeration disagrees with the principal minor");
  }
  return det;
}

}  // namespace galjac

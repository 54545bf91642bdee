#pragma once

// Z_p-towers X = X_0 <- X_1 <- ... from integer voltages: the layer
// X_n is the derived graph over Z/p^n. Jacobian orders of the layers are fitted
// to lambda n + mu p^n + nu and compared with the Weierstrass invariants of
// Z(T) / T, where Z(T) is the equivariant Laplacian determinant with the
// topological generator sent to 1 + T.

#include "galjac/covering.hpp"
#include "galjac/determinant.hpp"
#include "galjac/graph.hpp"
#include "galjac/poly.hpp"

#include <future>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace galjac {

inline constexpr std::size_t kMaxLayerVertices = 600;

inline bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline long ipow(long b, unsigned e) {
  long r = 1;
  while (e--) r *= b;
  return r;
}

/// p-adic valuation; -1 for zero.
inline long padic_valuation(const Int& x, unsigned long p) {
  if (x == 0) return -1;
  Int y = abs_value(x);
  long v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    y /= p;
    ++v;
  }
  return v;
}

/// Base graph with integer voltages (exponents of the topological generator),
/// one per edge in edge_representatives() order. An optional finite abelian
/// p-group with its own voltages describes an intermediate cover for Kida's formula.
class ZpVoltageGraph {
 public:
  ZpVoltageGraph() = default;
  ZpVoltageGraph(Graph base, unsigned long p, std::vector<long> voltages) : base_(std::move(base)), p_(p), a_(std::move(voltages)) {
    if (!is_prime(p_)) throw std::invalid_argument("p must be prime");
    if (a_.size() != base_.edge_count()) throw std::invalid_argument("need exactly one voltage per edge");
    if (!base_.is_connected()) throw std::invalid_argument("base graph must be connected");
    edge_of_.assign(base_.dart_count(), 0);
    const auto reps = base_.edge_representatives();
    for (std::size_t k = 0; k < reps.size(); ++k) edge_of_[reps[k]] = edge_of_[base_.partner(reps[k])] = k;
  }

  /// Kida mode: G must be a p-group; its voltages are indices into G.
  ZpVoltageGraph with_group(GroupPtr g, std::vector<std::size_t> g_voltages) const {
    ZpVoltageGraph r = *this;
    unsigned long n = g->size();
    while (n % p_ == 0) n /= p_;
    if (n != 1) throw std::invalid_argument("the finite group must be a p-group");
    r.kida_ = VoltageGraph(base_, std::move(g), std::move(g_voltages));
    return r;
  }

  const Graph& base() const { return base_; }
  unsigned long p() const { return p_; }
  const std::vector<long>& edge_voltages() const { return a_; }
  long voltage(std::size_t dart) const {
    const long a = a_[edge_of_.at(dart)];
    return dart < base_.partner(dart) ? a : -a;
  }
  const std::optional<VoltageGraph>& finite_part() const { return kida_; }

 private:
  Graph base_;
  unsigned long p_ = 2;
  std::vector<long> a_;
  std::vector<std::size_t> edge_of_;
  std::optional<VoltageGraph> kida_;
};

/// Integer voltages of the fundamental cycles of a BFS spanning tree.
inline std::vector<long> cycle_voltages(const ZpVoltageGraph& z) {
  const Graph& x = z.base();
  std::vector<long> pot(x.vertex_count(), 0);
  std::vector<std::size_t> via(x.vertex_count(), x.dart_count());
  std::vector<bool> seen(x.vertex_count(), false);
  std::vector<std::vector<std::size_t>> out(x.vertex_count());
  for (std::size_t e = 0; e < x.dart_count(); ++e) out[x.src(e)].push_back(e);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t e : out[queue[q]]) {
      const std::size_t w = x.dst(e);
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = e;
      pot[w] = pot[queue[q]] + z.voltage(e);
      queue.push_back(w);
    }
  std::vector<long> cyc;
  for (std::size_t e : x.edge_representatives()) {
    if (via[x.dst(e)] == e || via[x.src(e)] == x.partner(e)) continue;
    cyc.push_back(pot[x.src(e)] + z.voltage(e) - pot[x.dst(e)]);
  }
  return cyc;
}

/// Every layer is connected iff some cycle voltage is a p-adic unit.
inline bool tower_connected(const ZpVoltageGraph& z) {
  for (long c : cycle_voltages(z))
    if (c % static_cast<long>(z.p()) != 0) return true;
  return false;
}

/// X_n as a voltage graph over Z/p^n (the trivial group for n = 0).
inline VoltageGraph layer_graph(const ZpVoltageGraph& z, unsigned n) {
  const long q = ipow(static_cast<long>(z.p()), n);
  const GroupPtr g = n == 0 ? make_group({}) : make_group({q});
  std::vector<std::size_t> v;
  for (long a : z.edge_voltages()) v.push_back(n == 0 ? 0 : static_cast<std::size_t>(((a % q) + q) % q));
  return VoltageGraph(z.base(), g, std::move(v));
}

struct LayerOrders {
  std::vector<Int> orders;  // #Jac(X_n)
  std::vector<long> ord;    // ord_p #Jac(X_n)
  bool capped = false;      // stopped early at the vertex bound
};

inline LayerOrders layer_orders(const ZpVoltageGraph& z, unsigned n_max) {
  if (!tower_connected(z)) throw std::invalid_argument("tower is not connected: no cycle voltage is a p-adic unit");
  LayerOrders r;
  std::vector<std::future<Int>> jobs;
  for (unsigned n = 0; n <= n_max; ++n) {
    if (static_cast<std::size_t>(ipow(static_cast<long>(z.p()), n)) * z.base().vertex_count() > kMaxLayerVertices) {
      r.capped = true;
      break;
    }
    jobs.push_back(std::async(std::launch::async, [&z, n] {
      return spanning_tree_count(derived_graph(layer_graph(z, n)).graph);
    }));
  }
  for (auto& j : jobs) {
    r.orders.push_back(j.get());
    r.ord.push_back(padic_valuation(r.orders.back(), z.p()));
  }
  return r;
}

/// Integer polynomial in T standing for (1+T)^{-unit_shift} times coeffs.
struct PadicPolynomial {
  unsigned long p = 2;
  UPoly<Int> coeffs{Int(0)};
  unsigned long unit_shift = 0;
};

/// det of the Laplacian with sigma -> 1 + T, rows cleared of negative powers.
inline PadicPolynomial z_power_series(const ZpVoltageGraph& z) {
  if (!tower_connected(z)) throw std::invalid_argument("tower is not connected: no cycle voltage is a p-adic unit");
  const Graph& x = z.base();
  const std::size_t n = x.vertex_count();
  const UPoly<Int> zero(Int(0)), one = UPoly<Int>::constant(Int(0), Int(1));
  std::vector<long> shift(n, 0);
  for (std::size_t e = 0; e < x.dart_count(); ++e) shift[x.src(e)] = std::max(shift[x.src(e)], -z.voltage(e));
  RingMatrix<UPoly<Int>> m(n, std::vector<UPoly<Int>>(n, zero));
  PadicPolynomial r;
  r.p = z.p();
  for (std::size_t v = 0; v < n; ++v) {
    m[v][v] = one_plus_x_pow(static_cast<unsigned long>(shift[v])).map([&](const Int& c) { return Int(c * x.degree(v)); });
    r.unit_shift += static_cast<unsigned long>(shift[v]);
  }
  for (std::size_t e = 0; e < x.dart_count(); ++e)
    m[x.src(e)][x.dst(e)] -= one_plus_x_pow(static_cast<unsigned long>(z.voltage(e) + shift[x.src(e)]));
  r.coeffs = det_ring(m, zero, one);
  if (r.coeffs.is_zero()) throw std::logic_error("Z(T) vanishes although the tower is connected");
  if (r.coeffs.coeff(0) != 0) throw std::logic_error("Z(0) must vanish");
  return r;
}

/// f / T; T must divide f.
inline PadicPolynomial divide_by_t(const PadicPolynomial& f) {
  if (f.coeffs.coeff(0) != 0) throw std::invalid_argument("T does not divide the series");
  PadicPolynomial r = f;
  const auto& c = f.coeffs.coeffs();
  r.coeffs = UPoly<Int>(Int(0), std::vector<Int>(c.begin() + 1, c.end()));
  return r;
}

struct Weierstrass {
  long mu = 0;
  long lambda = 0;
  friend bool operator==(const Weierstrass&, const Weierstrass&) = default;
};

/// mu = min ord_p of the coefficients, lambda = first index attaining it.
inline Weierstrass weierstrass_invariants(const PadicPolynomial& f) {
  if (f.coeffs.is_zero()) throw std::invalid_argument("Weierstrass invariants of zero");
  Weierstrass w{-1, -1};
  const auto& c = f.coeffs.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const long v = padic_valuation(c[i], f.p);
    if (v >= 0 && (w.mu < 0 || v < w.mu)) w = {v, static_cast<long>(i)};
  }
  return w;
}

struct IwasawaFit {
  long lambda = 0, mu = 0, nu = 0;
  long n0 = 0;
  bool stable = false;  // integral fit with n0 <= n_max - 2
};

/// Exact fit of ord_n = lambda n + mu p^n + nu on the tail of the window.
/// The last three layers determine the parameters; n0 is then pushed back
/// as far as the formula keeps holding.
inline IwasawaFit iwasawa_fit(const std::vector<long>& ord, unsigned long p) {
  if (ord.size() < 4) throw std::invalid_argument("need at least four layers");
  const long pl = static_cast<long>(p);
  const unsigned N = static_cast<unsigned>(ord.size() - 1);
  const long d1 = ord[N - 1] - ord[N - 2], d2 = ord[N] - ord[N - 1];
  const long scale = (pl - 1) * (pl - 1) * ipow(pl, N - 2);
  IwasawaFit f;
  f.n0 = static_cast<long>(N);
  if ((d2 - d1) % scale != 0 || d2 < d1) return f;
  f.mu = (d2 - d1) / scale;
  f.lambda = d1 - f.mu * (pl - 1) * ipow(pl, N - 2);
  f.nu = ord[N] - f.lambda * static_cast<long>(N) - f.mu * ipow(pl, N);
  if (f.lambda < 0) return f;
  long n0 = static_cast<long>(N);
  while (n0 > 0 && ord[static_cast<std::size_t>(n0 - 1)] ==
                       f.lambda * (n0 - 1) + f.mu * ipow(pl, static_cast<unsigned>(n0 - 1)) + f.nu)
    --n0;
  f.n0 = n0;
  f.stable = n0 <= static_cast<long>(N) - 2;
  return f;
}

struct IwasawaReport {
  unsigned long p = 2;
  LayerOrders layers;
  IwasawaFit fit;
  PadicPolynomial z;
  Weierstrass weierstrass;  // of Z(T) / T
  bool verdict = false;
  std::vector<std::string> failures;
};

/// Largest n with p^n |V| within the layer vertex bound.
inline unsigned max_layer(unsigned long p, std::size_t vertices) {
  unsigned n = 0;
  while (static_cast<std::size_t>(ipow(static_cast<long>(p), n + 1)) * vertices <= kMaxLayerVertices) ++n;
  return n;
}

inline IwasawaReport verify_icnf(const ZpVoltageGraph& zvg, unsigned n_max) {
  IwasawaReport r;
  r.p = zvg.p();
  r.layers = layer_orders(zvg, n_max);
  if (r.layers.ord.size() < 4) throw ResourceError("fewer than four layers fit under the vertex bound");
  r.fit = iwasawa_fit(r.layers.ord, zvg.p());
  r.z = z_power_series(zvg);
  r.weierstrass = weierstrass_invariants(divide_by_t(r.z));
  if (!r.fit.stable) r.failures.push_back("layer orders do not stabilise in the window");
  if (r.fit.lambda != r.weierstrass.lambda) r.failures.push_back("lambda from layers differs from Weierstrass lambda");
  if (r.fit.mu != r.weierstrass.mu) r.failures.push_back("mu from layers differs from Weierstrass mu");
  r.verdict = r.failures.empty();
  return r;
}

/// The derived graph of the finite part, carrying the inherited integer voltages.
inline ZpVoltageGraph kida_cover(const ZpVoltageGraph& z) {
  if (!z.finite_part()) throw std::invalid_argument("no finite group attached");
  const VoltageGraph& fin = *z.finite_part();
  require_connected_cover(fin);
  const DerivedGraph d = derived_graph(fin);
  const std::size_t n = fin.group()->size();
  std::vector<long> a;
  for (std::size_t e : d.graph.edge_representatives()) a.push_back(z.voltage(e / n));
  return ZpVoltageGraph(d.graph, z.p(), std::move(a));
}

struct KidaReport {
  IwasawaReport base, cover;
  std::size_t group_order = 1;
  bool mu_zero = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// lambda~ + 1 = #G (lambda + 1) when mu = 0, and mu = 0 iff mu~ = 0.
inline KidaReport verify_kida(const ZpVoltageGraph& z, unsigned n_max) {
  KidaReport r;
  const ZpVoltageGraph cover = kida_cover(z);
  if (!tower_connected(cover)) throw std::invalid_argument("tower over the finite cover is not connected");
  r.group_order = z.finite_part()->group()->size();
  r.base = verify_icnf(z, n_max);
  r.cover = verify_icnf(cover, n_max);
  for (const auto& f : r.base.failures) r.failures.push_back("base: " + f);
  for (const auto& f : r.cover.failures) r.failures.push_back("cover: " + f);
  const long mu = r.base.weierstrass.mu, mu_t = r.cover.weierstrass.mu;
  r.mu_zero = mu == 0;
  if ((mu == 0) != (mu_t == 0)) r.failures.push_back("mu = 0 on one tower only");
  if (r.mu_zero) {
    const long lhs = r.cover.weierstrass.lambda + 1;
    const long rhs = static_cast<long>(r.group_order) * (r.base.weierstrass.lambda + 1);
    if (lhs != rhs)
      r.failures.push_back("lambda~ + 1 = " + std::to_string(lhs) + " but #G (lambda + 1) = " + std::to_string(rhs));
  }
  return r;
}

/// Random connected base with |V| <= max_v, |V|..|V|+2 edges and voltages in
/// [-3, 3], resampled until every layer is connected.
inline ZpVoltageGraph random_tower(unsigned long p, std::mt19937_64& rng, std::size_t max_v = 2) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::size_t nv = 1 + rng() % max_v;
    const std::size_t ne = nv + rng() % 3;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < ne; ++i) edges.emplace_back(rng() % nv, rng() % nv);
    Graph x = Graph::from_edges(nv, edges);
    if (!x.is_connected()) continue;
    std::vector<long> a;
    for (std::size_t i = 0; i < ne; ++i) a.push_back(static_cast<long>(rng() % 7) - 3);
    ZpVoltageGraph z(std::move(x), p, std::move(a));
    if (tower_connected(z)) return z;
  }
  throw std::runtime_error("no connected tower found");
}

/// random_tower plus random voltages in the p-group g, resampled until the
/// finite cover and its tower are connected.
inline ZpVoltageGraph random_kida_tower(const GroupPtr& g, unsigned long p, std::mt19937_64& rng, std::size_t max_v = 2) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const ZpVoltageGraph z = random_tower(p, rng, max_v);
    std::vector<std::size_t> gv;
    for (std::size_t i = 0; i < z.edge_voltages().size(); ++i) gv.push_back(rng() % g->size());
    ZpVoltageGraph k = z.with_group(g, std::move(gv));
    if (connectivity_criterion(*k.finite_part()) && tower_connected(kida_cover(k))) return k;
  }
  throw std::runtime_error("no connected Kida tower found");
}

}  // namespace galjac

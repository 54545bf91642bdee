#pragma once

// Fitting ideals of presentation matrices and of finite G-modules, the
// matrices N_s / M_s, the shifted Fitting ideal of Z/#G, and the determinant
// laws for row subsets of N_s.
//
// Presentation convention: rows are relations, columns are generators.

#include "galjac/gamma_module.hpp"
#include "galjac/ideal.hpp"
#include "galjac/poly.hpp"
#include "galjac/report.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galjac {

inline constexpr std::size_t kMinorCap = 2'000'000;

template <class T>
struct PresentationMatrix {
  std::vector<std::string> row_labels;
  std::size_t cols = 0;
  RingMatrix<T> rows;

  std::size_t row_count() const { return rows.size(); }
};

namespace detail {

inline Int binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Calls f on every size x size minor; throws ResourceError past the cap.
template <class T, class F>
void for_each_minor(const RingMatrix<T>& m, std::size_t cols, std::size_t size, const T& zero, const T& one, F f) {
  const std::size_t r = m.size();
  if (size > r || size > cols) return;
  if (detail::binomial(r, size) * detail::binomial(cols, size) > Int(static_cast<unsigned long>(kMinorCap)))
    throw ResourceError("minor enumeration exceeds " + std::to_string(kMinorCap) + " minors");
  detail::for_each_subset(r, size, [&](const std::vector<std::size_t>& rs) {
    detail::for_each_subset(cols, size, [&](const std::vector<std::size_t>& cs) {
      RingMatrix<T> sub(size, std::vector<T>(size, zero));
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) sub[i][j] = m[rs[i]][cs[j]];
      f(det_ring(sub, zero, one));
    });
  });
}

// ---------------------------------------------------------------------------
// Cyclic decompositions G = <g_1> x ... x <g_s>

struct CyclicDecomposition {
  std::vector<std::size_t> gens;
  std::vector<long> orders;
  std::size_t rank() const { return gens.size(); }
};

inline long element_order(const FinAbGroup& g, std::size_t x) {
  long n = 1;
  for (std::size_t y = x; y != 0; y = g.mul(x, y)) ++n;
  return n;
}

/// The fixed generators of the group, with trivial factors dropped.
inline CyclicDecomposition standard_decomposition(const FinAbGroup& g) {
  CyclicDecomposition d;
  for (std::size_t l = 0; l < g.rank(); ++l)
    if (g.order(l) > 1) {
      d.gens.push_back(g.generator(l));
      d.orders.push_back(g.order(l));
    }
  return d;
}

/// Checks that the generators have the stated orders (all >= 2) and that
/// G is their internal direct product.
inline bool is_cyclic_decomposition(const FinAbGroup& g, const CyclicDecomposition& d) {
  if (d.gens.size() != d.orders.size()) return false;
  std::size_t total = 1;
  for (std::size_t l = 0; l < d.rank(); ++l) {
    if (d.gens[l] >= g.size() || d.orders[l] < 2 || element_order(g, d.gens[l]) != d.orders[l]) return false;
    total *= static_cast<std::size_t>(d.orders[l]);
  }
  if (total != g.size()) return false;
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> cur{0};
  for (std::size_t l = 0; l < d.rank(); ++l) {
    std::vector<std::size_t> next;
    for (std::size_t x : cur)
      for (long e = 0; e < d.orders[l]; ++e) next.push_back(g.mul(x, g.pow(d.gens[l], e)));
    cur = std::move(next);
  }
  for (std::size_t x : cur) {
    if (seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

inline void require_decomposition(const FinAbGroup& g, const CyclicDecomposition& d) {
  if (g.size() < 2) throw std::invalid_argument("the trivial group is not allowed here");
  if (!is_cyclic_decomposition(g, d)) throw std::invalid_argument("not a cyclic decomposition of the group");
}

namespace cyc {

// sum_{i} w(i) g^i over one cyclic factor
template <class W>
GroupRingElement weighted(const GroupPtr& g, RingTag tag, std::size_t gen, long n, W w) {
  std::vector<Int> c(g->size());
  for (long i = 0; i < n; ++i) c[g->pow(gen, i)] += w(i);
  return GroupRingElement(g, tag, std::move(c));
}

inline GroupRingElement tau(const GroupPtr& g, RingTag tag, const CyclicDecomposition& d, std::size_t l) {
  return weighted(g, tag, d.gens[l], d.orders[l], [](long i) { return i == 1 ? 1 : (i == 0 ? -1 : 0); });
}
inline GroupRingElement nu(const GroupPtr& g, RingTag tag, const CyclicDecomposition& d, std::size_t l) {
  return weighted(g, tag, d.gens[l], d.orders[l], [](long) { return 1; });
}
inline GroupRingElement kolyvagin(const GroupPtr& g, RingTag tag, const CyclicDecomposition& d, std::size_t l) {
  return weighted(g, tag, d.gens[l], d.orders[l], [](long i) { return i; });
}
inline GroupRingElement b(const GroupPtr& g, RingTag tag, const CyclicDecomposition& d, std::size_t l) {
  GroupRingElement x = kolyvagin(g, tag, d, l);
  for (std::size_t k = 0; k < l; ++k) x = x * nu(g, tag, d, k);
  for (std::size_t k = l + 1; k < d.rank(); ++k) x *= Int(d.orders[k]);
  return x;
}

}  // namespace cyc

// ---------------------------------------------------------------------------
// N_s, M_s

/// Row order of N_s: (x2x3, x1x3, x1x2) for s = 3, lexicographic pairs otherwise.
inline std::vector<std::pair<std::size_t, std::size_t>> ns_row_pairs(std::size_t s) {
  if (s == 3) return {{1, 2}, {0, 2}, {0, 1}};
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t l = 0; l < s; ++l)
    for (std::size_t k = l + 1; k < s; ++k) out.emplace_back(l, k);
  return out;
}

/// N_s evaluated at t_1..t_s: row x_l x_l' has -t_l' in column l and t_l in column l'.
template <class T>
PresentationMatrix<T> ns_matrix(const std::vector<T>& t, const T& zero) {
  const std::size_t s = t.size();
  PresentationMatrix<T> m;
  m.cols = s;
  for (auto [l, k] : ns_row_pairs(s)) {
    std::vector<T> row(s, zero);
    row[l] = zero - t[k];
    row[k] = t[l];
    m.rows.push_back(std::move(row));
    m.row_labels.push_back("x" + std::to_string(l + 1) + "x" + std::to_string(k + 1));
  }
  return m;
}

/// N_s over Z[T_1..T_s] (plus `extra_vars` further indeterminates after the T's).
inline PresentationMatrix<MPoly> build_Ns(std::size_t s, std::size_t extra_vars = 0) {
  std::vector<MPoly> t;
  for (std::size_t l = 0; l < s; ++l) t.push_back(MPoly::variable(s + extra_vars, l));
  return ns_matrix(t, MPoly(s + extra_vars));
}

/// M_s: diagonal nu-block over N_s(tau), optionally followed by the row (b_1 ... b_s).
inline PresentationMatrix<GroupRingElement> build_Ms(const GroupPtr& g, RingTag tag, const CyclicDecomposition& d,
                                                    bool with_b_row) {
  const std::size_t s = d.rank();
  const GroupRingElement zero(g, tag);
  PresentationMatrix<GroupRingElement> m;
  m.cols = s;
  for (std::size_t l = 0; l < s; ++l) {
    std::vector<GroupRingElement> row(s, zero);
    row[l] = cyc::nu(g, tag, d, l);
    m.rows.push_back(std::move(row));
    m.row_labels.push_back("x" + std::to_string(l + 1) + "^2");
  }
  std::vector<GroupRingElement> taus;
  for (std::size_t l = 0; l < s; ++l) taus.push_back(cyc::tau(g, tag, d, l));
  auto n = ns_matrix(taus, zero);
  for (std::size_t r = 0; r < n.rows.size(); ++r) {
    m.rows.push_back(std::move(n.rows[r]));
    m.row_labels.push_back(n.row_labels[r]);
  }
  if (with_b_row) {
    std::vector<GroupRingElement> row;
    for (std::size_t l = 0; l < s; ++l) row.push_back(cyc::b(g, tag, d, l));
    m.rows.push_back(std::move(row));
    m.row_labels.push_back("y");
  }
  return m;
}

inline PresentationMatrix<GroupRingElement> build_Ms(const GroupPtr& g, bool with_b_row = false) {
  return build_Ms(g, RingTag::Full, standard_decomposition(*g), with_b_row);
}

// ---------------------------------------------------------------------------
// Fitting ideals of matrices

/// Fitt_i of a presentation over Z[G] or Z[G]/(N): the ideal of (k-i)-minors.
inline IdealLattice fitting_ideal_i(const GroupPtr& g, RingTag tag, const RingMatrix<GroupRingElement>& m,
                                    std::size_t k, std::size_t i) {
  if (i >= k) return IdealLattice::unit(g, tag);
  Lattice lat(tag == RingTag::Full ? g->size() : g->size() - 1);
  for_each_minor(m, k, k - i, GroupRingElement(g, tag), GroupRingElement::integer(g, tag, 1),
                 [&](const GroupRingElement& x) {
                   if (x.is_zero() || lat.contains(x.coords())) return;
                   // the lattice built so far is an ideal, so one miss means adding the orbit
                   for (std::size_t h = 0; h < g->size(); ++h) lat.insert(x.translate(h).coords());
                 });
  return IdealLattice::from_lattice(g, tag, std::move(lat));
}

inline IdealLattice fitting_ideal_i(const GroupPtr& g, RingTag tag, const PresentationMatrix<GroupRingElement>& m,
                                    std::size_t i) {
  for (const auto& row : m.rows)
    for (const auto& x : row)
      if (x.tag() != tag) throw std::invalid_argument("presentation entries lie in the wrong ring");
  return fitting_ideal_i(g, tag, m.rows, m.cols, i);
}

/// Nonzero (k-i)-minors of a polynomial presentation; the empty minor gives 1.
inline std::vector<MPoly> fitting_minors(const PresentationMatrix<MPoly>& m, std::size_t nvars, std::size_t i) {
  if (i >= m.cols) return {MPoly::constant(nvars, 1)};
  std::vector<MPoly> out;
  for_each_minor(m.rows, m.cols, m.cols - i, MPoly(nvars), MPoly::constant(nvars, 1), [&](const MPoly& p) {
    if (!p.is_zero()) out.push_back(p);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Fitting ideals of modules

struct ModulePresentation {
  std::vector<std::vector<Int>> generators;  // module coordinates
  RingMatrix<GroupRingElement> relations;    // rows = relations
  std::size_t k = 0;
};

namespace detail {

inline std::vector<std::size_t> ring_basis(const FinAbGroup& g, RingTag tag) {
  std::vector<std::size_t> b;
  for (std::size_t h = tag == RingTag::Full ? 0 : 1; h < g.size(); ++h) b.push_back(h);
  return b;
}

// Submodule generated by gens, as a lattice in Z^n containing the structure relations.
inline Lattice generated_lattice(const GammaModule& m, const std::vector<IntMatrix>& mats,
                                 const std::vector<std::vector<Int>>& gens) {
  Lattice lat(m.dim());
  for (std::size_t i = 0; i < m.torsion_dim(); ++i) {
    std::vector<Int> e(m.dim());
    e[i] = m.moduli()[i];
    lat.insert(std::move(e));
  }
  for (const auto& v : gens)
    for (const auto& a : mats) lat.insert(a.apply(v));
  return lat;
}

inline bool generates(const GammaModule& m, const std::vector<IntMatrix>& mats,
                      const std::vector<std::vector<Int>>& gens) {
  const Lattice lat = generated_lattice(m, mats, gens);
  return lat.full_rank() && lat.index() == 1;
}

inline std::vector<Int> relation_translate(const FinAbGroup& g, RingTag tag, const std::vector<Int>& rel,
                                           std::size_t k, std::size_t h, const GroupPtr& gp) {
  const std::size_t dim = tag == RingTag::Full ? g.size() : g.size() - 1;
  std::vector<Int> out;
  out.reserve(rel.size());
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Int> block(rel.begin() + static_cast<std::ptrdiff_t>(j * dim),
                           rel.begin() + static_cast<std::ptrdiff_t>((j + 1) * dim));
    const auto c = GroupRingElement::from_coords(gp, tag, block).translate(h).coords();
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

inline Lattice orbit_span(const GroupPtr& g, RingTag tag, const std::vector<std::vector<Int>>& rels, std::size_t k,
                          std::size_t dim) {
  Lattice lat(dim);
  for (const auto& r : rels)
    for (std::size_t h = 0; h < g->size(); ++h) lat.insert(relation_translate(*g, tag, r, k, h, g));
  return lat;
}

}  // namespace detail

/// A finite presentation of M over Z[G] or Z[G]/(N). Generators are chosen
/// greedily from the coordinate basis and pruned, then `extra` generators are
/// appended; relations generate the kernel of the evaluation map.
inline ModulePresentation module_presentation(const GammaModule& m, RingTag tag,
                                              const std::vector<std::vector<Int>>& extra = {}) {
  const GroupPtr& g = m.group();
  if (tag == RingTag::Quotient) {
    if (g->size() < 2) throw std::invalid_argument("Z[G]/(N) is the zero ring for trivial G");
    if (!m.finite()) throw std::invalid_argument("module must be finite for Z[G]/(N)");
    if (!m.norm_matrix().is_zero()) throw std::invalid_argument("N does not act as zero; not a Z[G]/(N)-module");
  }
  const auto mats = m.element_matrices();
  const std::size_t n = m.dim();

  std::vector<std::vector<Int>> gens;
  for (std::size_t i = n; i-- > 0;) {
    std::vector<Int> e(n);
    e[i] = 1;
    if (!detail::generated_lattice(m, mats, gens).contains(e)) gens.push_back(std::move(e));
  }
  for (std::size_t i = gens.size(); i-- > 0;) {
    auto rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (detail::generates(m, mats, rest)) gens = std::move(rest);
  }
  for (const auto& v : extra) {
    if (v.size() != n) throw std::invalid_argument("extra generator has wrong length");
    gens.push_back(m.reduce(v));
  }

  ModulePresentation p;
  p.generators = gens;
  p.k = gens.size();
  if (p.k == 0) return p;

  const auto basis = detail::ring_basis(*g, tag);
  const std::size_t dim = basis.size();
  // [E | D]: evaluation on the Z-basis of S^k, then torsion relations
  IntMatrix ed(n, p.k * dim + m.torsion_dim());
  for (std::size_t j = 0; j < p.k; ++j)
    for (std::size_t b = 0; b < dim; ++b) {
      const auto v = mats[basis[b]].apply(gens[j]);
      for (std::size_t i = 0; i < n; ++i) ed(i, j * dim + b) = v[i];
    }
  for (std::size_t i = 0; i < m.torsion_dim(); ++i) ed(i, p.k * dim + i) = m.moduli()[i];
  Lattice K(p.k * dim);
  for (const auto& v : integer_kernel(ed))
    K.insert(std::vector<Int>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p.k * dim)));

  std::vector<std::vector<Int>> rels;
  Lattice span(p.k * dim);
  for (const auto& v : K.basis()) {
    if (span.contains(v)) continue;
    rels.push_back(v);
    for (std::size_t h = 0; h < g->size(); ++h) span.insert(detail::relation_translate(*g, tag, v, p.k, h, g));
  }
  for (std::size_t i = rels.size(); i-- > 0;) {
    auto rest = rels;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (detail::orbit_span(g, tag, rest, p.k, p.k * dim).contains(K)) rels = std::move(rest);
  }
  for (const auto& r : rels) {
    std::vector<GroupRingElement> row;
    for (std::size_t j = 0; j < p.k; ++j) {
      std::vector<Int> block(r.begin() + static_cast<std::ptrdiff_t>(j * dim),
                             r.begin() + static_cast<std::ptrdiff_t>((j + 1) * dim));
      row.push_back(GroupRingElement::from_coords(g, tag, block));
    }
    p.relations.push_back(std::move(row));
  }
  return p;
}

/// Fitt of a finitely generated module over Z[G] or Z[G]/(N).
inline IdealLattice module_fitting_ideal(const GammaModule& m, RingTag tag,
                                         const std::vector<std::vector<Int>>& extra = {}) {
  const auto p = module_presentation(m, tag, extra);
  return fitting_ideal_i(m.group(), tag, p.relations, p.k, 0);
}

// ---------------------------------------------------------------------------
// Shifted Fitting ideal of Z/#G

/// (#G)^{-1} times the image in Z[G]/(N) of the s-minors of M_s with the b-row.
inline IdealLattice shift1_via_presentation(const GroupPtr& g, const CyclicDecomposition& d) {
  require_decomposition(*g, d);
  const auto m = build_Ms(g, RingTag::Quotient, d, true);
  IdealLattice f = fitting_ideal_i(g, RingTag::Quotient, m, 0);
  return IdealLattice::from_lattice(g, RingTag::Quotient, f.lattice(), Int(static_cast<unsigned long>(g->size())));
}

inline IdealLattice shift1_via_presentation(const GroupPtr& g) {
  return shift1_via_presentation(g, standard_decomposition(*g));
}

/// Exponent pairs (e, f) with e_l in {0,1}, f_l >= 0 and total degree `deg`.
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> nu_tau_exponents(std::size_t s, int deg) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  if (deg < 0) return out;
  std::vector<int> e(s), f(s);
  std::function<void(std::size_t, int)> rec = [&](std::size_t l, int left) {
    if (l == s) {
      if (left == 0) out.emplace_back(e, f);
      return;
    }
    for (int a = 0; a <= std::min(1, left); ++a)
      for (int b = 0; a + b <= left; ++b) {
        e[l] = a;
        f[l] = b;
        rec(l + 1, left - a - b);
      }
    e[l] = f[l] = 0;
  };
  rec(0, deg);
  return out;
}

/// nu^e tau^f
inline GroupRingElement nu_tau_monomial(const GroupPtr& g, RingTag tag, const CyclicDecomposition& d,
                                        const std::vector<int>& e, const std::vector<int>& f) {
  GroupRingElement x = GroupRingElement::integer(g, tag, 1);
  for (std::size_t l = 0; l < d.rank(); ++l) {
    if (e[l]) x = x * cyc::nu(g, tag, d, l);
    for (int k = 0; k < f[l]; ++k) x = x * cyc::tau(g, tag, d, l);
  }
  return x;
}

/// Ideal generated by nu_1...(D_l/n_l)...nu_s (l = 1..s) and the nu^e tau^f
/// with e_l in {0,1} and sum e + sum f = s - 2.
inline IdealLattice closed_form_shift1(const GroupPtr& g, const CyclicDecomposition& d) {
  require_decomposition(*g, d);
  const RingTag tag = RingTag::Quotient;
  const std::size_t s = d.rank();
  const Int order(static_cast<unsigned long>(g->size()));
  std::vector<GroupRingElement> gens;
  for (std::size_t l = 0; l < s; ++l) {
    GroupRingElement x = cyc::kolyvagin(g, tag, d, l) * Int(order / d.orders[l]);
    for (std::size_t k = 0; k < s; ++k)
      if (k != l) x = x * cyc::nu(g, tag, d, k);
    gens.push_back(std::move(x));
  }
  for (const auto& [e, f] : nu_tau_exponents(s, static_cast<int>(s) - 2))
    gens.push_back(nu_tau_monomial(g, tag, d, e, f) * order);
  return IdealLattice::from_generators(g, tag, gens, order);
}

inline IdealLattice closed_form_shift1(const GroupPtr& g) { return closed_form_shift1(g, standard_decomposition(*g)); }

// ---------------------------------------------------------------------------
// Determinant laws for N_s with the symbolic row (B_1 ... B_s)

/// Variables: T_1..T_s are 0..s-1, B_1..B_s are s..2s-1.
inline PresentationMatrix<MPoly> ns_with_symbolic_row(std::size_t s) {
  auto m = build_Ns(s, s);
  std::vector<MPoly> row;
  for (std::size_t l = 0; l < s; ++l) row.push_back(MPoly::variable(2 * s, s + l));
  m.rows.push_back(std::move(row));
  m.row_labels.push_back("y");
  return m;
}

/// (sum_l B_l T_l) * prod_l T_l^{deg_l - 1}
inline MPoly tree_determinant(std::size_t s, const std::vector<int>& deg) {
  MPoly sum(2 * s);
  for (std::size_t l = 0; l < s; ++l) sum += MPoly::variable(2 * s, l) * MPoly::variable(2 * s, s + l);
  MPoly::Monomial mono(2 * s, 0);
  for (std::size_t l = 0; l < s; ++l) mono[l] = deg[l] - 1;
  return sum * MPoly::monomial(mono);
}

namespace detail {

inline bool same_up_to_sign(const MPoly& a, const MPoly& b) { return a == b || a == -b; }

inline std::vector<std::string> poly_names(std::size_t s) {
  std::vector<std::string> n;
  for (std::size_t l = 0; l < s; ++l) n.push_back("T" + std::to_string(l + 1));
  for (std::size_t l = 0; l < s; ++l) n.push_back("B" + std::to_string(l + 1));
  return n;
}

}  // namespace detail

/// Every s-subset of the rows of N_s plus the symbolic row: determinant 0 unless
/// the edges form a tree, and the tree formula otherwise; every degree tuple
/// with sum (deg - 1) = s - 2 occurs.
inline Report tree_minor_check(std::size_t s) {
  if (s < 2 || s > 5) throw std::out_of_range("tree_minor_check needs 2 <= s <= 5");
  Report rep;
  rep.claim = "tree determinant law, s = " + std::to_string(s);
  const auto m = ns_with_symbolic_row(s);
  const auto pairs = ns_row_pairs(s);
  const std::size_t nv = 2 * s;
  const MPoly zero(nv), one = MPoly::constant(nv, 1);
  const auto names = detail::poly_names(s);
  std::set<std::vector<int>> realized;
  detail::for_each_subset(m.rows.size(), s, [&](const std::vector<std::size_t>& rs) {
    ++rep.cases;
    RingMatrix<MPoly> sub;
    for (std::size_t r : rs) sub.push_back(m.rows[r]);
    const MPoly det = det_ring(sub, zero, one);
    bool has_y = false;
    std::vector<int> deg(s, 0);
    detail::RollbackUnionFind uf(s);
    bool acyclic = true;
    std::string label;
    for (std::size_t r : rs) {
      label += (label.empty() ? "" : ",") + m.row_labels[r];
      if (r == pairs.size()) {
        has_y = true;
        continue;
      }
      auto [a, b] = pairs[r];
      ++deg[a];
      ++deg[b];
      if (!uf.unite(a, b)) acyclic = false;
    }
    const bool tree = has_y && acyclic;  // s-1 acyclic edges on s vertices span
    if (!tree) {
      if (!det.is_zero()) rep.fail("{" + label + "} is not a tree but det = " + det.to_string(names));
      return;
    }
    realized.insert(deg);
    const MPoly expect = tree_determinant(s, deg);
    if (!detail::same_up_to_sign(det, expect))
      rep.fail("{" + label + "}: det = " + det.to_string(names) + ", expected +-" + expect.to_string(names));
  });
  // all tuples (f_l) with f_l >= 0 and sum = s - 2, as degrees f_l + 1
  std::size_t tuples = 0;
  std::vector<int> deg(s);
  std::function<void(std::size_t, int)> rec = [&](std::size_t l, int left) {
    if (l + 1 == s) {
      deg[l] = left + 1;
      ++tuples;
      if (!realized.count(deg)) {
        std::string t;
        for (int x : deg) t += std::to_string(x) + " ";
        rep.fail("degree tuple not realized by a tree: " + t);
      }
      return;
    }
    for (int f = 0; f <= left; ++f) {
      deg[l] = f + 1;
      rec(l + 1, left - f);
    }
  };
  rec(0, static_cast<int>(s) - 2);
  rep.cases += tuples;
  return rep;
}

/// Cofactors of B_1..B_s for a row subset containing the symbolic row; rows
/// are given as 0-based vertex pairs.
inline std::vector<MPoly> symbolic_row_cofactors(std::size_t s,
                                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (edges.size() + 1 != s) throw std::invalid_argument("need s - 1 edges");
  const std::size_t nv = 2 * s;
  std::vector<MPoly> out;
  for (std::size_t l = 0; l < s; ++l) {
    RingMatrix<MPoly> sub;
    for (auto [a, b] : edges) {
      std::vector<MPoly> row;
      for (std::size_t c = 0; c < s; ++c) {
        if (c == l) continue;
        if (c == a) row.push_back(-MPoly::variable(nv, b));
        else if (c == b) row.push_back(MPoly::variable(nv, a));
        else row.push_back(MPoly(nv));
      }
      sub.push_back(std::move(row));
    }
    out.push_back(det_ring(sub, MPoly(nv), MPoly::constant(nv, 1)));
  }
  return out;
}

/// Fitt_i(N_s) = (1) for i >= s, 0 for i = 0 < s, (T_1..T_s)^{s-i} otherwise.
/// Minors are homogeneous of degree s - i, so the reverse inclusion reduces to
/// every degree-(s-i) monomial lying in the Z-span of the minors.
inline Report ns_fitting_oracle(std::size_t s, std::size_t i) {
  if (s > 4) throw std::out_of_range("ns_fitting_oracle needs s <= 4");
  Report rep;
  rep.claim = "Fitt_" + std::to_string(i) + "(N_" + std::to_string(s) + ")";
  const auto m = build_Ns(s);
  const auto minors = fitting_minors(m, s, i);
  rep.cases = minors.size();
  auto describe = [&](const MPoly& p) { return p.to_string(detail::poly_names(s)); };
  if (i >= s) {
    if (minors.size() != 1 || !(minors[0] == MPoly::constant(s, 1))) rep.fail("expected the unit ideal");
    return rep;
  }
  if (i == 0) {
    rep.cases = 1;
    if (!minors.empty()) rep.fail("expected the zero ideal, found minor " + describe(minors[0]));
    return rep;
  }
  const int deg = static_cast<int>(s - i);
  for (const auto& p : minors)
    if (!p.is_homogeneous() || p.min_degree() != deg) rep.fail("minor " + describe(p) + " is not of degree " + std::to_string(deg));
  // monomials of degree deg in s variables
  std::vector<MPoly::Monomial> monos;
  MPoly::Monomial cur(s, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t l, int left) {
    if (l + 1 == s) {
      cur[l] = left;
      monos.push_back(cur);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      cur[l] = a;
      rec(l + 1, left - a);
    }
  };
  rec(0, deg);
  Lattice span(monos.size());
  for (const auto& p : minors) {
    std::vector<Int> v(monos.size());
    for (std::size_t j = 0; j < monos.size(); ++j) v[j] = p.coeff(monos[j]);
    span.insert(std::move(v));
  }
  for (std::size_t j = 0; j < monos.size(); ++j) {
    std::vector<Int> e(monos.size());
    e[j] = 1;
    ++rep.cases;
    if (!span.contains(e)) rep.fail("monomial " + describe(MPoly::monomial(monos[j])) + " not generated");
  }
  return rep;
}

}  // namespace galjac

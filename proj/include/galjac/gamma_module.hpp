#pragma once

// Finitely generated abelian groups with an action of a finite abelian group G,
// stored in invariant-factor coordinates.
//
// Coordinate i has modulus d_i >= 2 (a cyclic summand Z/d_i) or 0 (a free
// summand Z); free coordinates come last. action[l] is the integer matrix of
// the l-th standard generator sigma_l: column j is the image of basis vector
// e_j, and row i is read modulo d_i.

#include "galjac/graph.hpp"
#include "galjac/group_ring.hpp"
#include "galjac/normal_form.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace galjac {

class GammaModule {
 public:
  GammaModule() = default;
  GammaModule(GroupPtr g, std::vector<Int> moduli, std::vector<IntMatrix> action)
      : group_(std::move(g)), moduli_(std::move(moduli)), action_(std::move(action)) {
    if (action_.size() != group_->rank()) throw std::invalid_argument("one action matrix per cyclic factor required");
    bool seen_free = false;
    for (const auto& d : moduli_) {
      if (d == 1 || d < 0) throw std::invalid_argument("module coordinate moduli must be 0 or >= 2");
      if (d == 0) seen_free = true;
      else if (seen_free) throw std::invalid_argument("free coordinates must come last");
    }
    for (auto& a : action_) {
      if (a.rows() != dim() || a.cols() != dim()) throw std::invalid_argument("action matrix has wrong size");
      a = reduce(a);
    }
  }

  /// The zero module.
  static GammaModule zero(GroupPtr g) {
    const std::size_t r = g->rank();
    return GammaModule(std::move(g), {}, std::vector<IntMatrix>(r));
  }

  const GroupPtr& group() const { return group_; }
  const std::vector<Int>& moduli() const { return moduli_; }
  const std::vector<IntMatrix>& action() const { return action_; }
  std::size_t dim() const { return moduli_.size(); }

  std::size_t free_rank() const {
    std::size_t r = 0;
    for (const auto& d : moduli_) r += d == 0;
    return r;
  }
  std::size_t torsion_dim() const { return dim() - free_rank(); }
  bool finite() const { return free_rank() == 0; }
  bool is_zero() const { return moduli_.empty(); }

  Int order() const {
    if (!finite()) throw std::domain_error("order of an infinite module");
    return product(moduli_);
  }

  /// Canonical invariant factors of the underlying abelian group.
  AbelianGroupStructure structure() const {
    IntMatrix d(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) d(i, i) = moduli_[i];
    return AbelianGroupStructure::from_smith(smith_normal_form(d).invariants, dim());
  }

  std::vector<Int> reduce(std::vector<Int> v) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (moduli_[i] != 0) v[i] = mod_nonneg(v[i], moduli_[i]);
    return v;
  }
  IntMatrix reduce(IntMatrix a) const {
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (moduli_[i] != 0)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = mod_nonneg(a(i, j), moduli_[i]);
    return a;
  }

  /// Matrix of every group element, indexed by the group enumeration.
  std::vector<IntMatrix> element_matrices() const {
    const FinAbGroup& g = *group_;
    std::vector<IntMatrix> out(g.size());
    std::vector<bool> done(g.size(), false);
    out[0] = IntMatrix::identity(dim());
    done[0] = true;
    std::vector<std::size_t> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::size_t h = queue[q];
      for (std::size_t l = 0; l < g.rank(); ++l) {
        const std::size_t k = g.mul(g.generator(l), h);
        if (done[k]) continue;
        out[k] = reduce(action_[l] * out[h]);
        done[k] = true;
        queue.push_back(k);
      }
    }
    return out;
  }

  /// Matrix of a group ring element (summing the element matrices).
  IntMatrix ring_element_matrix(const GroupRingElement& x) const {
    const auto mats = element_matrices();
    IntMatrix m(dim(), dim());
    for (std::size_t h = 0; h < mats.size(); ++h) {
      if (x.coeff(h) == 0) continue;
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) m(i, j) += x.coeff(h) * mats[h](i, j);
    }
    return reduce(m);
  }

  IntMatrix norm_matrix() const {
    const auto mats = element_matrices();
    IntMatrix m(dim(), dim());
    for (const auto& a : mats) m = m + a;
    return reduce(m);
  }

  /// The module is a well-defined G-module: matrices respect the moduli,
  /// commute, and sigma_l^{n_l} acts trivially.
  bool is_valid() const {
    for (const auto& a : action_)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t i = 0; i < dim(); ++i) {
          if (moduli_[i] == 0 && moduli_[j] != 0 && a(i, j) != 0) return false;  // torsion maps to torsion
          if (moduli_[i] != 0 && !divides(moduli_[i], moduli_[j] * a(i, j))) return false;
        }
    for (std::size_t l = 0; l < action_.size(); ++l)
      for (std::size_t k = l + 1; k < action_.size(); ++k)
        if (reduce(action_[l] * action_[k]) != reduce(action_[k] * action_[l])) return false;
    for (std::size_t l = 0; l < action_.size(); ++l) {
      IntMatrix p = IntMatrix::identity(dim());
      for (long e = 0; e < group_->order(l); ++e) p = reduce(action_[l] * p);
      if (p != reduce(IntMatrix::identity(dim()))) return false;
    }
    return true;
  }

 private:
  GroupPtr group_;
  std::vector<Int> moduli_;
  std::vector<IntMatrix> action_;
};

/// Z^n / (column span of rel) with the G-action induced by integer matrices
/// that preserve the column span.
inline GammaModule cokernel_module(const GroupPtr& g, const IntMatrix& rel, const std::vector<IntMatrix>& actions) {
  const std::size_t n = rel.rows();
  if (actions.size() != g->rank()) throw std::invalid_argument("one action matrix per cyclic factor required");
  const SmithForm s = smith_normal_form(rel);
  std::vector<Int> d(n, Int(0));
  for (std::size_t i = 0; i < s.invariants.size(); ++i) d[i] = s.invariants[i];
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] != 1) keep.push_back(i);
  std::vector<Int> moduli;
  for (std::size_t i : keep) moduli.push_back(d[i]);
  std::vector<IntMatrix> act;
  for (const auto& p : actions) {
    if (p.rows() != n || p.cols() != n) throw std::invalid_argument("action matrix has wrong size");
    const IntMatrix conj = s.U * p * s.U_inv;
    IntMatrix a(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = 0; j < keep.size(); ++j) a(i, j) = conj(keep[i], keep[j]);
    act.push_back(std::move(a));
  }
  return GammaModule(g, std::move(moduli), std::move(act));
}

/// Relation matrix (columns) of a module: d_i e_i for each torsion coordinate.
inline IntMatrix structure_relations(const GammaModule& m) {
  IntMatrix r(m.dim(), m.torsion_dim());
  for (std::size_t i = 0; i < m.torsion_dim(); ++i) r(i, i) = m.moduli()[i];
  return r;
}

inline IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

inline GammaModule torsion_submodule(const GammaModule& m) {
  const std::size_t t = m.torsion_dim();
  std::vector<Int> moduli(m.moduli().begin(), m.moduli().begin() + static_cast<std::ptrdiff_t>(t));
  std::vector<IntMatrix> act;
  for (const auto& a : m.action()) {
    IntMatrix b(t, t);
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < t; ++j) {
        if (i >= t && a(i, j) != 0) throw std::logic_error("torsion is not mapped into torsion");
        if (i < t) b(i, j) = a(i, j);
      }
    act.push_back(std::move(b));
  }
  return GammaModule(m.group(), std::move(moduli), std::move(act));
}

/// M / x M for a group ring element x.
inline GammaModule quotient_by_element(const GammaModule& m, const GroupRingElement& x) {
  return cokernel_module(m.group(), hcat(structure_relations(m), m.ring_element_matrix(x)), m.action());
}

/// M / N M for the norm element N.
inline GammaModule quotient_by_norm(const GammaModule& m) {
  return cokernel_module(m.group(), hcat(structure_relations(m), m.norm_matrix()), m.action());
}

/// The G-submodule generated by the given vectors (closed under the action),
/// as a module in its own invariant-factor coordinates.
inline GammaModule submodule(const GammaModule& m, std::vector<std::vector<Int>> gens) {
  if (!m.finite()) throw std::domain_error("submodules implemented for finite modules");
  const auto mats = m.element_matrices();
  {
    std::vector<std::vector<Int>> orbit;
    for (const auto& v : gens)
      for (const auto& a : mats) orbit.push_back(m.reduce(a.apply(v)));
    gens = std::move(orbit);
  }
  const std::size_t n = m.dim(), k = gens.size();
  IntMatrix b(n, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) b(i, j) = gens[j][i];
  const IntMatrix bd = hcat(b, structure_relations(m));
  IntMatrix rel(k, 0);
  {
    std::vector<std::vector<Int>> cols;
    for (const auto& v : integer_kernel(bd)) cols.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    rel = IntMatrix(k, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < k; ++i) rel(i, j) = cols[j][i];
  }
  std::vector<IntMatrix> act;
  for (const auto& a : m.action()) {
    IntMatrix p(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const auto x = solve_integer(bd, a.apply(gens[j]));
      if (!x) throw std::logic_error("generated subgroup is not stable under the action");
      for (std::size_t i = 0; i < k; ++i) p(i, j) = (*x)[i];
    }
    act.push_back(std::move(p));
  }
  return cokernel_module(m.group(), rel, act);
}

/// Kernel of N on a finite module.
inline GammaModule norm_kernel_submodule(const GammaModule& m) {
  const std::size_t n = m.dim();
  if (n == 0) return m;
  std::vector<std::vector<Int>> gens;
  for (const auto& v : integer_kernel(hcat(m.norm_matrix(), structure_relations(m))))
    gens.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
  return submodule(m, gens);
}

/// Order of the kernel of x -> N x on a finite module.
inline Int norm_kernel_order(const GammaModule& m) {
  if (!m.finite()) throw std::domain_error("norm kernel order needs a finite module");
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  const auto ker = integer_kernel(hcat(m.norm_matrix(), structure_relations(m)));
  Lattice L(n);
  for (const auto& v : ker) L.insert(std::vector<Int>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Int> e(n);
    e[i] = m.moduli()[i];
    L.insert(e);
  }
  return m.order() / L.index();
}

/// Order of N M, computed through the kernel of N (independent of M / N M).
inline Int norm_image_order(const GammaModule& m) { return m.order() / norm_kernel_order(m); }

/// Pontryagin dual Hom(M, Q/Z) in the dual basis phi_j(e_i) = delta_ij / d_j.
/// The contragredient action is (g phi)(x) = phi(g^{-1} x); the twisted one
/// is (g phi)(x) = phi(g x).
inline GammaModule pontryagin_dual(const GammaModule& m, bool contragredient = true) {
  if (!m.finite()) throw std::domain_error("Pontryagin dual needs a finite module");
  const auto& d = m.moduli();
  const FinAbGroup& g = *m.group();
  const auto mats = m.element_matrices();
  std::vector<IntMatrix> act;
  for (std::size_t l = 0; l < g.rank(); ++l) {
    const std::size_t x = contragredient ? g.inv(g.generator(l)) : g.generator(l);
    const IntMatrix& a = mats[x];
    IntMatrix b(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) b(i, j) = a(j, i) * d[i] / d[j];
    act.push_back(std::move(b));
  }
  return GammaModule(m.group(), d, std::move(act));
}

inline GammaModule direct_sum(const GammaModule& a, const GammaModule& b) {
  if (!a.finite() || !b.finite()) throw std::domain_error("direct sum implemented for finite modules");
  std::vector<Int> moduli = a.moduli();
  moduli.insert(moduli.end(), b.moduli().begin(), b.moduli().end());
  std::vector<IntMatrix> act;
  for (std::size_t l = 0; l < a.action().size(); ++l) {
    IntMatrix c(moduli.size(), moduli.size());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a.action()[l](i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) c(a.dim() + i, a.dim() + j) = b.action()[l](i, j);
    act.push_back(std::move(c));
  }
  return GammaModule(a.group(), std::move(moduli), std::move(act));
}

/// Integer matrix of multiplication by x on the lattice coordinates of the ring.
inline IntMatrix multiplication_matrix(const GroupRingElement& x) {
  const std::size_t dim = x.dim();
  IntMatrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<Int> e(dim);
    e[j] = 1;
    const auto col = (x * GroupRingElement::from_coords(x.group(), x.tag(), e)).coords();
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = col[i];
  }
  return m;
}

/// Cokernel of a presentation matrix over the ring: rows are relations, the
/// k columns are generators.
inline GammaModule module_from_presentation(const GroupPtr& g, RingTag tag, const GroupRingMatrix& h, std::size_t k) {
  const std::size_t dim = tag == RingTag::Full ? g->size() : g->size() - 1;
  std::vector<std::vector<Int>> rels;
  for (const auto& row : h) {
    if (row.size() != k) throw std::invalid_argument("presentation row has wrong length");
    for (std::size_t t = 0; t < g->size(); ++t) {
      std::vector<Int> v;
      v.reserve(k * dim);
      for (const auto& x : row) {
        const auto c = x.translate(t).coords();
        v.insert(v.end(), c.begin(), c.end());
      }
      rels.push_back(std::move(v));
    }
  }
  IntMatrix rel(k * dim, rels.size());
  for (std::size_t j = 0; j < rels.size(); ++j)
    for (std::size_t i = 0; i < k * dim; ++i) rel(i, j) = rels[j][i];
  std::vector<IntMatrix> act;
  for (std::size_t l = 0; l < g->rank(); ++l) {
    const IntMatrix s = multiplication_matrix(sigma(g, l, tag));
    IntMatrix a(k * dim, k * dim);
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) a(b * dim + i, b * dim + j) = s(i, j);
    act.push_back(std::move(a));
  }
  return cokernel_module(g, rel, act);
}

}  // namespace galjac

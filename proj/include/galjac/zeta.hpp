#pragma once

// Equivariant Ihara zeta function of a voltage graph with abelian voltages.
//
//   Z(u) = det(1 - A u + (D - 1) u^2)             over Z[G][u]
//   zeta(u) = prod over primitive cycles [P] of (1 - alpha(P) u^len(P))^{-1}
//   1/zeta(u) = det(1 - u B)                       B the non-backtracking dart matrix
//
// and the three-term identity zeta(u) (1 - u^2)^{#E - #V} Z(u) = 1.

#include "galjac/covering.hpp"
#include "galjac/poly.hpp"
#include "galjac/report.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <utility>
#include <stdexcept>
#include <string>
#include <vector>

namespace galjac {

using GroupRingPoly = UPoly<GroupRingElement>;

inline constexpr std::size_t kMaxZetaTruncation = 12;

namespace detail {

inline GroupRingElement ring_one(const GroupPtr& g) { return GroupRingElement::integer(g, RingTag::Full, 1); }
inline GroupRingElement ring_zero(const GroupPtr& g) { return GroupRingElement(g, RingTag::Full); }

inline GroupRingPoly series_one(const GroupPtr& g) { return GroupRingPoly::constant(ring_zero(g), ring_one(g)); }

/// (1 - u^2)^k mod u^{n}, any integer k.
inline GroupRingPoly one_minus_u2_pow(const GroupPtr& g, long k, std::size_t n) {
  const GroupRingPoly base(ring_zero(g), {ring_one(g), ring_zero(g), -ring_one(g)});
  GroupRingPoly r = series_one(g);
  for (long i = 0; i < std::abs(k); ++i) r = r.mul_trunc(base, n);
  return k >= 0 ? r : r.inverse_series(ring_one(g), n);
}

inline GroupRingElement exact_divide(const GroupRingElement& x, long k) {
  std::vector<Int> c = x.coeffs();
  for (auto& a : c) {
    if (mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(k)) == 0) throw std::logic_error("non-integral coefficient in the trace identity");
    a /= k;
  }
  return GroupRingElement(x.group(), x.tag(), std::move(c));
}

}  // namespace detail

/// det(1 - A u + (D - 1) u^2), with A[v][w] the sum of voltages of darts v -> w.
inline GroupRingPoly zeta_polynomial(const VoltageGraph& vg) {
  const Graph& x = vg.base();
  const GroupPtr& g = vg.group();
  const std::size_t n = x.vertex_count();
  const auto zero = detail::ring_zero(g), one = detail::ring_one(g);
  const GroupRingPoly pzero(zero);
  RingMatrix<GroupRingPoly> m(n, std::vector<GroupRingPoly>(n, pzero));
  for (std::size_t v = 0; v < n; ++v)
    m[v][v] = GroupRingPoly(zero, {one, zero, GroupRingElement::integer(g, RingTag::Full, x.degree(v) - 1)});
  for (std::size_t e = 0; e < x.dart_count(); ++e)
    m[x.src(e)][x.dst(e)] -= GroupRingPoly::term(zero, GroupRingElement::basis(g, RingTag::Full, vg.voltage(e)), 1);
  return det_ring(m, pzero, detail::series_one(g));
}

/// Primitive closed reduced tailless dart cycles of length <= max_len, one
/// per rotation class (the lexicographically least rotation).
inline std::vector<std::vector<std::size_t>> primitive_cycles(const Graph& x, std::size_t max_len) {
  if (max_len > kMaxZetaTruncation) throw ResourceError("cycle enumeration limited to length 12");
  std::vector<std::vector<std::size_t>> out_darts(x.vertex_count());
  for (std::size_t e = 0; e < x.dart_count(); ++e) out_darts[x.src(e)].push_back(e);
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> path;

  auto is_canonical_primitive = [](const std::vector<std::size_t>& p) {
    const std::size_t n = p.size();
    for (std::size_t r = 1; r < n; ++r) {
      // compare rotation by r with p
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = p[(i + r) % n], b = p[i];
        if (a < b) return false;  // a smaller rotation exists
        if (a > b) goto next;
      }
      return false;  // equal rotation: a proper period, not primitive
    next:;
    }
    return true;
  };

  auto dfs = [&](auto&& self, std::size_t first) -> void {
    const std::size_t last = path.back();
    if (x.dst(last) == x.src(first) && first != x.partner(last) && is_canonical_primitive(path)) found.push_back(path);
    if (path.size() == max_len) return;
    for (std::size_t f : out_darts[x.dst(last)]) {
      if (f < first || f == x.partner(last)) continue;
      path.push_back(f);
      self(self, first);
      path.pop_back();
    }
  };
  for (std::size_t e = 0; e < x.dart_count(); ++e) {
    path.assign(1, e);
    dfs(dfs, e);
  }
  return found;
}

/// prod (1 - alpha(P) u^len(P)) mod u^{L+1}, i.e. 1/zeta. Classes sharing
/// length and monodromy are merged and their power expanded binomially.
inline GroupRingPoly euler_reciprocal(const VoltageGraph& vg, std::size_t L) {
  const GroupPtr& g = vg.group();
  const auto zero = detail::ring_zero(g);
  std::map<std::pair<std::size_t, std::size_t>, unsigned long> classes;  // (length, monodromy) -> count
  for (const auto& p : primitive_cycles(vg.base(), L)) {
    std::size_t a = g->identity();
    for (std::size_t e : p) a = g->mul(a, vg.voltage(e));
    ++classes[{p.size(), a}];
  }
  GroupRingPoly r = detail::series_one(g);
  for (const auto& [key, count] : classes) {
    const auto [len, a] = key;
    std::vector<GroupRingElement> c(L + 1, zero);
    std::size_t pw = g->identity();
    for (unsigned long k = 0; k <= count && k * len <= L; ++k) {
      Int b;
      mpz_bin_uiui(b.get_mpz_t(), count, k);
      if (k % 2) b = -b;
      c[k * len] = GroupRingElement::basis(g, RingTag::Full, pw) * b;
      pw = g->mul(pw, a);
    }
    r = r.mul_trunc(GroupRingPoly(zero, std::move(c)), L + 1);
  }
  return r;
}

/// zeta mod u^{L+1} from the Euler product.
inline GroupRingPoly euler_product_truncation(const VoltageGraph& vg, std::size_t L) {
  return euler_reciprocal(vg, L).inverse_series(detail::ring_one(vg.group()), L + 1);
}

/// Non-backtracking dart matrix: entry alpha(e) at (e, f) when dst(e) = src(f) and f != partner(e).
inline RingMatrix<GroupRingElement> edge_matrix(const VoltageGraph& vg) {
  const Graph& x = vg.base();
  const GroupPtr& g = vg.group();
  const std::size_t m = x.dart_count();
  RingMatrix<GroupRingElement> b(m, std::vector<GroupRingElement>(m, detail::ring_zero(g)));
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f)
      if (x.dst(e) == x.src(f) && f != x.partner(e)) b[e][f] = GroupRingElement::basis(g, RingTag::Full, vg.voltage(e));
  return b;
}

/// det(1 - u B) = 1/zeta mod u^{L+1}, through the trace identity
/// k c_k = -sum_m tr(B^m) c_{k-m}.
inline GroupRingPoly edge_matrix_zeta(const VoltageGraph& vg, std::size_t L) {
  if (L > kMaxZetaTruncation) throw ResourceError("truncation limited to 12");
  const GroupPtr& g = vg.group();
  const auto zero = detail::ring_zero(g);
  const auto b = edge_matrix(vg);
  const std::size_t m = b.size();
  std::vector<GroupRingElement> traces(L + 1, zero);
  RingMatrix<GroupRingElement> power = b;
  for (std::size_t k = 1; k <= L; ++k) {
    for (std::size_t i = 0; i < m; ++i) traces[k] += power[i][i];
    if (k == L) break;
    RingMatrix<GroupRingElement> next(m, std::vector<GroupRingElement>(m, zero));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (power[i][j].is_zero()) continue;
        for (std::size_t k2 = 0; k2 < m; ++k2)
          if (!b[j][k2].is_zero()) next[i][k2] += power[i][j] * b[j][k2];
      }
    power = std::move(next);
  }
  std::vector<GroupRingElement> c(L + 1, zero);
  c[0] = detail::ring_one(g);
  for (std::size_t k = 1; k <= L; ++k) {
    GroupRingElement s = zero;
    for (std::size_t j = 1; j <= k; ++j) s += traces[j] * c[k - j];
    c[k] = detail::exact_divide(-s, static_cast<long>(k));
  }
  return GroupRingPoly(zero, std::move(c));
}

/// zeta (1 - u^2)^{#E - #V} Z = 1 mod u^{L+1}, and the two zeta oracles agree.
inline Report verify_three_term(const VoltageGraph& vg, std::size_t L) {
  if (L > kMaxZetaTruncation) throw ResourceError("truncation limited to 12");
  Report r;
  r.claim = "three-term zeta identity mod u^" + std::to_string(L + 1);
  const GroupPtr& g = vg.group();
  const std::size_t n = L + 1;
  const GroupRingPoly recip = euler_reciprocal(vg, L);
  const GroupRingPoly zeta = recip.inverse_series(detail::ring_one(g), n);
  const GroupRingPoly edge = edge_matrix_zeta(vg, L);
  const GroupRingPoly z = zeta_polynomial(vg);
  const long k = static_cast<long>(vg.base().edge_count()) - static_cast<long>(vg.base().vertex_count());
  const GroupRingPoly prod = zeta.mul_trunc(detail::one_minus_u2_pow(g, k, n), n).mul_trunc(z, n);
  ++r.cases;
  if (!(prod == detail::series_one(g))) r.fail("zeta (1-u^2)^(E-V) Z is not 1");
  ++r.cases;
  if (!(recip == edge)) r.fail("Euler product and dart-matrix determinant disagree");
  ++r.cases;
  if (!(z.evaluate(detail::ring_one(g)) == z_element(vg))) r.fail("Z(1) differs from the equivariant Laplacian determinant");
  return r;
}

}  // namespace galjac

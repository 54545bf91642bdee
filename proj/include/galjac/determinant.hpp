#pragma once

// Determinants over arbitrary commutative rings (with zero divisors).
//
// A ring type T must provide +, -, * and a free function is_zero(const T&)
// found by argument-dependent lookup. Callers supply the ring's zero and one
// since those may carry context (e.g. the coefficient group).

#include "galjac/integer.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace galjac {

inline bool is_zero(const Int& x) { return x == 0; }

template <class T>
using RingMatrix = std::vector<std::vector<T>>;

/// Laplace expansion with memoization over column subsets: 2^n * n products.
template <class T>
T det_cofactor(const RingMatrix<T>& m, const T& zero, const T& one) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return one;
  if (n > 20) throw std::invalid_argument("cofactor determinant limited to size 20");
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<T> f(full + 1, zero);
  std::vector<bool> live(full + 1, false);
  f[0] = one;
  live[0] = true;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (!live[mask]) continue;
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      if (mask & bit) continue;
      if (is_zero(m[row][j])) continue;
      // sign of inserting column j after the columns already used
      const int above = std::popcount(mask >> (j + 1));
      T term = f[mask] * m[row][j];
      if (above & 1)
        f[mask | bit] = f[mask | bit] - term;
      else
        f[mask | bit] = f[mask | bit] + term;
      live[mask | bit] = true;
    }
  }
  return f[full];
}

/// Division-free Berkowitz algorithm; returns the determinant.
template <class T>
T det_berkowitz(const RingMatrix<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return one;
  // c holds the characteristic polynomial det(x I - A_r) of the leading block,
  // highest degree first.
  std::vector<T> c{one, zero - a[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<T> q(r + 2, zero);
    q[0] = one;
    q[1] = zero - a[r][r];
    std::vector<T> v(r, zero);
    for (std::size_t i = 0; i < r; ++i) v[i] = a[i][r];
    for (std::size_t k = 2; k <= r + 1; ++k) {
      T s = zero;
      for (std::size_t i = 0; i < r; ++i) s = s + a[r][i] * v[i];
      q[k] = zero - s;
      if (k == r + 1) break;
      std::vector<T> w(r, zero);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) w[i] = w[i] + a[i][j] * v[j];
      v = std::move(w);
    }
    std::vector<T> nc(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < c.size(); ++j) nc[i] = nc[i] + q[i - j] * c[j];
    c = std::move(nc);
  }
  return (n % 2 == 0) ? c[n] : zero - c[n];
}

/// Cofactor expansion up to size 10, Berkowitz beyond.
template <class T>
T det_ring(const RingMatrix<T>& m, const T& zero, const T& one) {
  if (m.size() <= 10) return det_cofactor(m, zero, one);
  return det_berkowitz(m, zero, one);
}

}  // namespace galjac

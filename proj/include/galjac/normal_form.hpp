#pragma once

// Smith and Hermite normal forms, integer kernels and exact determinants.

#include "galjac/integer.hpp"
#include "galjac/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace galjac {

/// Result of a Smith normal form computation: U * input * V == diag.
/// U_inv is U^{-1}, kept so that module actions can be transported into the
/// diagonal coordinates without a separate inversion.
struct SmithForm {
  IntMatrix diag;
  IntMatrix U;
  IntMatrix V;
  IntMatrix U_inv;
  /// The min(rows, cols) diagonal entries, non-negative, each dividing the next
  /// (zeros at the end).
  std::vector<Int> invariants;
};

namespace detail {

struct SmithWorker {
  IntMatrix A, U, V, Ui;
  std::size_t r, c;

  explicit SmithWorker(const IntMatrix& m)
      : A(m), U(IntMatrix::identity(m.rows())), V(IntMatrix::identity(m.cols())),
        Ui(IntMatrix::identity(m.rows())), r(m.rows()), c(m.cols()) {}

  void row_add(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    A.add_row(dst, src, k);
    U.add_row(dst, src, k);
    Ui.add_col(src, dst, -k);
  }
  void row_swap(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    U.swap_rows(a, b);
    Ui.swap_cols(a, b);
  }
  void row_negate(std::size_t i) {
    A.negate_row(i);
    U.negate_row(i);
    Ui.negate_col(i);
  }
  void col_add(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    A.add_col(dst, src, k);
    V.add_col(dst, src, k);
  }
  void col_swap(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    V.swap_cols(a, b);
  }

  // Moves the smallest non-zero entry of row t / column t (at or beyond t) to (t, t).
  void repivot_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    Int best = 0;
    for (std::size_t i = t; i < r; ++i) {
      if (A(i, t) != 0 && (best == 0 || abs_value(A(i, t)) < best)) {
        best = abs_value(A(i, t));
        bi = i;
        bj = t;
      }
    }
    for (std::size_t j = t; j < c; ++j) {
      if (A(t, j) != 0 && (best == 0 || abs_value(A(t, j)) < best)) {
        best = abs_value(A(t, j));
        bi = t;
        bj = j;
      }
    }
    row_swap(t, bi);
    col_swap(t, bj);
  }

  void run() {
    const std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
      // minimal-absolute-value pivot in the trailing block
      std::size_t pi = r, pj = c;
      Int best = 0;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (A(i, j) != 0 && (best == 0 || abs_value(A(i, j)) < best)) {
            best = abs_value(A(i, j));
            pi = i;
            pj = j;
          }
      if (pi == r) break;
      row_swap(t, pi);
      col_swap(t, pj);

      for (;;) {
        bool remainder = false;
        for (std::size_t i = t + 1; i < r; ++i) {
          if (A(i, t) == 0) continue;
          row_add(i, t, -trunc_div(A(i, t), A(t, t)));
          if (A(i, t) != 0) remainder = true;
        }
        for (std::size_t j = t + 1; j < c; ++j) {
          if (A(t, j) == 0) continue;
          col_add(j, t, -trunc_div(A(t, j), A(t, t)));
          if (A(t, j) != 0) remainder = true;
        }
        if (remainder) {
          repivot_cross(t);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < r && !fixed; ++i)
          for (std::size_t j = t + 1; j < c; ++j)
            if (!divides(A(t, t), A(i, j))) {
              row_add(t, i, 1);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (A(t, t) < 0) row_negate(t);
    }
  }
};

}  // namespace detail

/// Smith normal form with minimal-absolute-value pivoting.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  detail::SmithWorker w(m);
  w.run();
  SmithForm out;
  const std::size_t n = std::min(m.rows(), m.cols());
  out.invariants.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.invariants[i] = w.A(i, i);
  out.diag = std::move(w.A);
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  out.U_inv = std::move(w.Ui);
  return out;
}

/// An integer solution of A x = b, if one exists.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& A, const std::vector<Int>& b) {
  if (b.size() != A.rows()) throw std::invalid_argument("right-hand side has wrong length");
  const SmithForm s = smith_normal_form(A);
  // D y = U b with x = V y
  const std::vector<Int> ub = s.U.apply(b);
  std::vector<Int> y(A.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    const Int d = i < s.invariants.size() ? s.invariants[i] : Int(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (!divides(d, ub[i])) return std::nullopt;
    y[i] = ub[i] / d;
  }
  return s.V.apply(y);
}

/// Integer lattice in Z^d kept in (row-style) Hermite normal form: the basis
/// rows are in echelon form with positive pivots, and every entry above a
/// pivot lies in [0, pivot). The form is unique, so equality of lattices is
/// equality of bases.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::size_t dim) : dim_(dim), pivot_row_(dim, -1) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<Int>>& basis() const {
    canonicalize();
    return rows_;
  }
  bool is_zero() const { return rows_.empty(); }
  bool full_rank() const { return rows_.size() == dim_; }

  /// Index [Z^d : L] for full-rank lattices.
  Int index() const {
    if (!full_rank()) throw std::domain_error("index of a lattice that is not full rank");
    canonicalize();
    Int d = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) d *= rows_[i][pivots_[i]];
    return d;
  }

  /// Adds a vector; returns true if the lattice grew.
  bool insert(std::vector<Int> v) {
    check_dim(v);
    bool changed = false;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (v[c] == 0) continue;
      const int idx = pivot_row_[c];
      if (idx < 0) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        add_row(std::move(v), c);
        touch();
        return true;
      }
      auto& row = rows_[static_cast<std::size_t>(idx)];
      const Int a = row[c];
      const Int b = v[c];
      if (divides(a, b)) {
        const Int q = b / a;
        for (std::size_t j = c; j < dim_; ++j) v[j] -= q * row[j];
        continue;
      }
      Int x, y;
      const Int g = gcdext(a, b, x, y);
      const Int ag = a / g, bg = b / g;
      for (std::size_t j = c; j < dim_; ++j) {
        Int nr = x * row[j] + y * v[j];
        v[j] = ag * v[j] - bg * row[j];
        row[j] = std::move(nr);
      }
      changed = true;
    }
    if (changed) touch();
    return changed;
  }

  bool contains(std::vector<Int> v) const {
    check_dim(v);
    for (std::size_t c = 0; c < dim_; ++c) {
      if (v[c] == 0) continue;
      const int idx = pivot_row_[c];
      if (idx < 0) return false;
      const auto& row = rows_[static_cast<std::size_t>(idx)];
      if (!divides(row[c], v[c])) return false;
      const Int q = v[c] / row[c];
      for (std::size_t j = c; j < dim_; ++j) v[j] -= q * row[j];
    }
    return true;
  }

  bool contains(const Lattice& other) const {
    for (const auto& r : other.rows_)
      if (!contains(r)) return false;
    return true;
  }

  /// gcd of all basis entries (0 for the zero lattice).
  Int content() const {
    canonicalize();
    Int g = 0;
    for (const auto& r : rows_)
      for (const auto& x : r) g = gcd(g, x);
    return g;
  }

  /// Lattice divided by a common factor of all entries.
  Lattice divided_by(const Int& k) const {
    Lattice out(dim_);
    for (const auto& r : rows_) {
      std::vector<Int> s(r.size());
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (!divides(k, r[j])) throw std::domain_error("lattice not divisible by factor");
        s[j] = r[j] / k;
      }
      out.insert(std::move(s));
    }
    return out;
  }

  Lattice scaled_by(const Int& k) const {
    Lattice out(dim_);
    if (k == 0) return out;
    for (const auto& r : rows_) {
      std::vector<Int> s(r.size());
      for (std::size_t j = 0; j < r.size(); ++j) s[j] = r[j] * k;
      out.insert(std::move(s));
    }
    return out;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    a.canonicalize();
    b.canonicalize();
    return a.dim_ == b.dim_ && a.rows_ == b.rows_;
  }

 private:
  void check_dim(const std::vector<Int>& v) const {
    if (v.size() != dim_) throw std::invalid_argument("lattice vector has wrong dimension");
  }

  void add_row(std::vector<Int> v, std::size_t pivot) {
    // keep rows sorted by pivot column
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
    std::fill(pivot_row_.begin(), pivot_row_.end(), -1);
    for (std::size_t i = 0; i < pivots_.size(); ++i) pivot_row_[pivots_[i]] = static_cast<int>(i);
  }

  // Reduction above pivots is deferred; it runs every few insertions to keep
  // entries small and always before the basis is observed.
  void touch() {
    dirty_ = true;
    if (++pending_ >= 16) canonicalize();
  }
  void canonicalize() const {
    if (!dirty_) return;
    dirty_ = false;
    pending_ = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t p = pivots_[i];
      if (rows_[i][p] < 0)
        for (auto& x : rows_[i]) x = -x;
      const Int& piv = rows_[i][p];
      for (std::size_t k = 0; k < i; ++k) {
        if (rows_[k][p] == 0) continue;
        const Int q = floor_div(rows_[k][p], piv);
        if (q == 0) continue;
        for (std::size_t j = p; j < dim_; ++j) rows_[k][j] -= q * rows_[i][j];
      }
    }
  }

  std::size_t dim_ = 0;
  mutable std::vector<std::vector<Int>> rows_;
  std::vector<std::size_t> pivots_;
  mutable bool dirty_ = false;
  mutable int pending_ = 0;
  std::vector<int> pivot_row_;
};

/// Z-basis of {x in Z^cols : A x = 0}, computed by unimodular row reduction
/// of [A^T | I].
inline std::vector<std::vector<Int>> integer_kernel(const IntMatrix& A) {
  const std::size_t r = A.rows(), c = A.cols();
  std::vector<std::vector<Int>> W(c, std::vector<Int>(r + c));
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < r; ++j) W[i][j] = A(j, i);
    W[i][r + i] = 1;
  }
  std::size_t prow = 0;
  for (std::size_t col = 0; col < r && prow < c; ++col) {
    for (;;) {
      std::size_t best = c;
      for (std::size_t i = prow; i < c; ++i)
        if (W[i][col] != 0 && (best == c || abs_value(W[i][col]) < abs_value(W[best][col]))) best = i;
      if (best == c) break;
      std::swap(W[prow], W[best]);
      bool rem = false;
      for (std::size_t i = prow + 1; i < c; ++i) {
        if (W[i][col] == 0) continue;
        const Int q = trunc_div(W[i][col], W[prow][col]);
        for (std::size_t j = col; j < r + c; ++j) W[i][j] -= q * W[prow][j];
        if (W[i][col] != 0) rem = true;
      }
      if (!rem) {
        ++prow;
        break;
      }
    }
  }
  std::vector<std::vector<Int>> ker;
  for (std::size_t i = prow; i < c; ++i) ker.emplace_back(W[i].begin() + static_cast<std::ptrdiff_t>(r), W[i].end());
  return ker;
}

/// Fraction-free Gaussian elimination (Bareiss).
inline Int determinant_bareiss(IntMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(t);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t det_mod_prime(const IntMatrix& m, std::uint64_t p) {
  const std::size_t n = m.rows();
  std::vector<std::uint64_t> a(n * n);
  const Int P(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = mod_nonneg(m(i, j), P).get_ui();
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t s = k;
    while (s < n && a[s * n + k] == 0) ++s;
    if (s == n) return 0;
    if (s != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[s * n + j], a[k * n + j]);
      det = (p - det) % p;
    }
    det = mulmod(det, a[k * n + k], p);
    const std::uint64_t inv = powmod(a[k * n + k], p - 2, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::uint64_t f = mulmod(a[i * n + k], inv, p);
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) {
        const std::uint64_t t = mulmod(f, a[k * n + j], p);
        a[i * n + j] = a[i * n + j] >= t ? a[i * n + j] - t : a[i * n + j] + p - t;
      }
    }
  }
  return det;
}

}  // namespace detail

/// Multimodular determinant: residues modulo 62-bit primes combined by CRT
/// until the product of moduli exceeds twice the Hadamard bound.
inline Int determinant_modular(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  double log2_bound = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * m(i, j);
    if (s == 0) return 0;
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, s.get_mpz_t());
    log2_bound += 0.5 * (std::log2(mant) + static_cast<double>(exp));
  }
  Int modulus = 1, value = 0;
  Int prime = Int(1) << 62;
  double log2_mod = 0.0;
  while (log2_mod < log2_bound + 2.0) {
    do {
      prime -= 1;
    } while (mpz_probab_prime_p(prime.get_mpz_t(), 25) == 0);
    const std::uint64_t p = prime.get_ui();
    const Int r(static_cast<unsigned long>(detail::det_mod_prime(m, p)));
    // CRT: value += modulus * ((r - value) * modulus^{-1} mod p)
    Int inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), prime.get_mpz_t());
    const Int t = mod_nonneg((r - value) * inv, prime);
    value += modulus * t;
    modulus *= prime;
    log2_mod += std::log2(static_cast<double>(p));
  }
  if (value > modulus / 2) value -= modulus;
  return value;
}

/// Exact determinant; Bareiss for small sizes, multimodular beyond.
inline Int determinant(const IntMatrix& m) {
  if (m.rows() <= 48) return determinant_bareiss(m);
  return determinant_modular(m);
}

}  // namespace galjac

#pragma once

// Polynomials: sparse multivariate over Z, dense univariate over a
// commutative coefficient ring.

#include "galjac/determinant.hpp"
#include "galjac/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace galjac {

/// Integer polynomial in a fixed number of indeterminates; zero terms are never stored.
class MPoly {
 public:
  using Monomial = std::vector<int>;

  MPoly() = default;
  explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

  static MPoly constant(std::size_t nvars, const Int& c) {
    MPoly p(nvars);
    if (c != 0) p.terms_[Monomial(nvars, 0)] = c;
    return p;
  }
  static MPoly variable(std::size_t nvars, std::size_t i, const Int& c = 1) {
    MPoly p(nvars);
    Monomial m(nvars, 0);
    m.at(i) = 1;
    if (c != 0) p.terms_[m] = c;
    return p;
  }
  static MPoly monomial(const Monomial& m, const Int& c = 1) {
    MPoly p(m.size());
    if (c != 0) p.terms_[m] = c;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Int coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
  }

  static int degree_of(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

  /// Smallest total degree of a term (-1 for the zero polynomial).
  int min_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      const int k = degree_of(m);
      if (d < 0 || k < d) d = k;
    }
    return d;
  }
  int max_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, degree_of(m));
    return d;
  }
  bool is_homogeneous() const { return min_degree() == max_degree(); }

  MPoly& operator+=(const MPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check(b);
    MPoly r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(a.nvars_);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << '-';
      first = false;
      const Int a = abs_value(c);
      const bool is_const = degree_of(m) == 0;
      if (a != 1 || is_const) os << a.get_str();
      bool need_star = a != 1;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (need_star) os << '*';
        need_star = true;
        os << (i < names.size() ? names[i] : "x" + std::to_string(i));
        if (m[i] > 1) os << '^' << m[i];
      }
    }
    return os.str();
  }

 private:
  void check(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial variable count mismatch");
  }
  void add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t nvars_ = 0;
  std::map<Monomial, Int> terms_;
};

inline bool is_zero(const MPoly& p) { return p.is_zero(); }

namespace detail {
// Free function so that the coefficient ring's is_zero is found by lookup
// instead of the member of UPoly.
template <class T>
bool coeff_is_zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

/// Dense univariate polynomial with coefficients in a ring T; the ring's zero
/// is carried along so that T may need context (e.g. a group).
template <class T>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(T zero) : zero_(std::move(zero)) {}
  UPoly(T zero, std::vector<T> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

  static UPoly constant(T zero, const T& c) { return UPoly(std::move(zero), {c}); }
  /// c * x^k
  static UPoly term(T zero, const T& c, std::size_t k) {
    std::vector<T> v(k + 1, zero);
    v[k] = c;
    return UPoly(std::move(zero), std::move(v));
  }

  const T& zero() const { return zero_; }
  const std::vector<T>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const T& coeff(std::size_t k) const { return k < c_.size() ? c_[k] : zero_; }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) { return a.mul_trunc(b, a.c_.size() + b.c_.size()); }

  /// Product modulo x^n.
  UPoly mul_trunc(const UPoly& b, std::size_t n) const {
    if (c_.empty() || b.c_.empty() || n == 0) return UPoly(zero_);
    std::vector<T> r(std::min(n, c_.size() + b.c_.size() - 1), zero_);
    for (std::size_t i = 0; i < c_.size() && i < r.size(); ++i) {
      if (is_zero_coeff(c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size() && i + j < r.size(); ++j) r[i + j] = r[i + j] + c_[i] * b.c_[j];
    }
    return UPoly(zero_, std::move(r));
  }

  UPoly truncate(std::size_t n) const {
    if (c_.size() <= n) return *this;
    return UPoly(zero_, std::vector<T>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  /// Inverse modulo x^n of a series whose constant term is `one`.
  UPoly inverse_series(const T& one, std::size_t n) const {
    if (c_.empty() || !(c_[0] == one)) throw std::domain_error("series inverse needs constant term 1");
    std::vector<T> inv(n, zero_);
    if (n == 0) return UPoly(zero_);
    inv[0] = one;
    for (std::size_t k = 1; k < n; ++k) {
      T s = zero_;
      for (std::size_t i = 1; i <= k && i < c_.size(); ++i) s = s + c_[i] * inv[k - i];
      inv[k] = zero_ - s;
    }
    return UPoly(zero_, std::move(inv));
  }

  /// Evaluation at a ring element by Horner's rule.
  T evaluate(const T& x) const {
    T r = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  /// Coefficientwise map into another ring.
  template <class F>
  auto map(F f) const {
    using U = decltype(f(zero_));
    std::vector<U> v;
    for (const auto& c : c_) v.push_back(f(c));
    return UPoly<U>(f(zero_), std::move(v));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  static bool is_zero_coeff(const T& x) { return detail::coeff_is_zero(x); }
  void trim() {
    while (!c_.empty() && is_zero_coeff(c_.back())) c_.pop_back();
  }

  T zero_{};
  std::vector<T> c_;
};

template <class T>
bool is_zero(const UPoly<T>& p) {
  return p.is_zero();
}

/// (1 + x)^k over the integers.
inline UPoly<Int> one_plus_x_pow(unsigned long k) {
  std::vector<Int> c(k + 1);
  Int b = 1;
  for (unsigned long i = 0; i <= k; ++i) {
    c[i] = b;
    b = b * Int(k - i) / Int(i + 1);
  }
  return UPoly<Int>(Int(0), std::move(c));
}

}  // namespace galjac

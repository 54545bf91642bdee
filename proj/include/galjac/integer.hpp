#pragma once

// Arbitrary-precision integer helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace galjac {

using Int = mpz_class;

/// Raised when a computation would exceed one of the documented resource caps.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Int abs_value(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Extended gcd: returns g >= 0 with g = x*a + y*b.
inline Int gcdext(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Floor division and the matching non-negative remainder for b > 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs_value(m);
  return r;
}

/// Truncating quotient, used where the smallest-magnitude remainder is wanted.
inline Int trunc_div(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// p-adic valuation; the valuation of 0 is reported as -1.
inline long ord_p(const Int& a, long p) {
  if (a == 0) return -1;
  Int x = abs_value(a);
  long v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  Int x(p);
  return mpz_probab_prime_p(x.get_mpz_t(), 30) > 0;
}

inline bool fits_int64(const Int& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }

inline long to_long(const Int& a) {
  if (!fits_int64(a)) throw std::overflow_error("integer does not fit in 64 bits: " + a.get_str());
  return a.get_si();
}

inline Int product(const std::vector<Int>& xs) {
  Int r = 1;
  for (const auto& x : xs) r *= x;
  return r;
}

}  // namespace galjac

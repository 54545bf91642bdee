#pragma once

// Integral group rings R = Z[G] and their quotients Rbar = Z[G]/(N) for a
// finite abelian group G, with N the norm element (sum of all elements).
//
// Elements are dense coefficient vectors indexed by the group enumeration of
// FinAbGroup. In Rbar the canonical representative has coefficient 0 at the
// identity; lattice coordinates for Rbar are the remaining |G|-1 entries.

#include "galjac/determinant.hpp"
#include "galjac/group.hpp"
#include "galjac/integer.hpp"

#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace galjac {

enum class RingTag { Full, Quotient };

inline const char* ring_name(RingTag t) { return t == RingTag::Full ? "Z[G]" : "Z[G]/(N)"; }

class GroupRingElement {
 public:
  GroupRingElement() = default;
  GroupRingElement(GroupPtr g, RingTag tag) : group_(std::move(g)), tag_(tag), c_(group_->size()) {}
  GroupRingElement(GroupPtr g, RingTag tag, std::vector<Int> coeffs)
      : group_(std::move(g)), tag_(tag), c_(std::move(coeffs)) {
    if (c_.size() != group_->size()) throw std::invalid_argument("coefficient vector has wrong length");
    normalize();
  }

  static GroupRingElement integer(GroupPtr g, RingTag tag, const Int& n) {
    GroupRingElement x(std::move(g), tag);
    x.c_[0] = n;
    x.normalize();
    return x;
  }
  static GroupRingElement basis(GroupPtr g, RingTag tag, std::size_t idx) {
    GroupRingElement x(std::move(g), tag);
    x.c_.at(idx) = 1;
    x.normalize();
    return x;
  }
  /// Element from lattice coordinates (all |G| entries for R, non-identity entries for Rbar).
  static GroupRingElement from_coords(GroupPtr g, RingTag tag, const std::vector<Int>& v) {
    GroupRingElement x(g, tag);
    const std::size_t off = tag == RingTag::Full ? 0 : 1;
    if (v.size() + off != g->size()) throw std::invalid_argument("coordinate vector has wrong length");
    for (std::size_t i = 0; i < v.size(); ++i) x.c_[i + off] = v[i];
    return x;
  }

  const GroupPtr& group() const { return group_; }
  RingTag tag() const { return tag_; }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& coeff(std::size_t idx) const { return c_.at(idx); }
  std::size_t dim() const { return tag_ == RingTag::Full ? c_.size() : c_.size() - 1; }

  std::vector<Int> coords() const {
    if (tag_ == RingTag::Full) return c_;
    return {c_.begin() + 1, c_.end()};
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  /// Sum of coefficients; only meaningful in R.
  Int augmentation() const {
    if (tag_ != RingTag::Full) throw std::logic_error("augmentation is not defined on Z[G]/(N)");
    Int s = 0;
    for (const auto& x : c_) s += x;
    return s;
  }

  /// Canonical image in Z[G]/(N).
  GroupRingElement reduce() const { return GroupRingElement(group_, RingTag::Quotient, c_); }
  /// Canonical representative of an Rbar element, viewed in R.
  GroupRingElement lift() const { return GroupRingElement(group_, RingTag::Full, c_); }

  /// The involution g -> g^{-1}.
  GroupRingElement iota() const {
    GroupRingElement r(group_, tag_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[group_->inv(i)] = c_[i];
    r.normalize();
    return r;
  }

  /// Multiplication by a group element.
  GroupRingElement translate(std::size_t g) const {
    GroupRingElement r(group_, tag_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[group_->mul(g, i)] = c_[i];
    r.normalize();
    return r;
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
  }
  GroupRingElement& operator*=(const Int& k) {
    for (auto& x : c_) x *= k;
    return *this;
  }

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator-(GroupRingElement a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend GroupRingElement operator*(GroupRingElement a, const Int& k) { return a *= k; }
  friend GroupRingElement operator*(const Int& k, GroupRingElement a) { return a *= k; }

  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    a.check(b);
    const FinAbGroup& g = *a.group_;
    GroupRingElement r(a.group_, a.tag_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        r.c_[g.mul(i, j)] += a.c_[i] * b.c_[j];
      }
    }
    r.normalize();
    return r;
  }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.tag_ == b.tag_ && *a.group_ == *b.group_ && a.c_ == b.c_;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!first) os << (c_[i] < 0 ? " - " : " + ");
      else if (c_[i] < 0) os << '-';
      first = false;
      const Int a = abs_value(c_[i]);
      if (i == 0) {
        os << a.get_str();
        continue;
      }
      if (a != 1) os << a.get_str() << '*';
      os << "g" << i;
    }
    if (first) os << '0';
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const GroupRingElement& x) { return os << x.to_string(); }

 private:
  void check(const GroupRingElement& o) const {
    if (tag_ != o.tag_) throw std::invalid_argument("group ring mismatch: Z[G] versus Z[G]/(N)");
    if (group_ != o.group_ && !(*group_ == *o.group_)) throw std::invalid_argument("group ring mismatch: different groups");
  }
  void normalize() {
    if (tag_ != RingTag::Quotient || c_[0] == 0) return;
    const Int shift = c_[0];
    for (auto& x : c_) x -= shift;
  }

  GroupPtr group_;
  RingTag tag_ = RingTag::Full;
  std::vector<Int> c_;
};

inline bool is_zero(const GroupRingElement& x) { return x.is_zero(); }

// Distinguished elements. Factor indices l are 0-based here.

inline GroupRingElement sigma(const GroupPtr& g, std::size_t l, RingTag tag = RingTag::Full) {
  return GroupRingElement::basis(g, tag, g->generator(l));
}

/// tau_l = sigma_l - 1
inline GroupRingElement tau(const GroupPtr& g, std::size_t l, RingTag tag = RingTag::Full) {
  return sigma(g, l, tag) - GroupRingElement::integer(g, tag, 1);
}

/// nu_l = 1 + sigma_l + ... + sigma_l^{n_l - 1}
inline GroupRingElement nu(const GroupPtr& g, std::size_t l, RingTag tag = RingTag::Full) {
  std::vector<Int> c(g->size());
  for (long i = 0; i < g->order(l); ++i) c[g->pow(g->generator(l), i)] += 1;
  return GroupRingElement(g, tag, std::move(c));
}

/// D_l = sigma_l + 2 sigma_l^2 + ... + (n_l - 1) sigma_l^{n_l - 1}
inline GroupRingElement kolyvagin(const GroupPtr& g, std::size_t l, RingTag tag = RingTag::Full) {
  std::vector<Int> c(g->size());
  for (long i = 1; i < g->order(l); ++i) c[g->pow(g->generator(l), i)] += i;
  return GroupRingElement(g, tag, std::move(c));
}

/// The norm element, sum of all group elements.
inline GroupRingElement norm_element(const GroupPtr& g, RingTag tag = RingTag::Full) {
  return GroupRingElement(g, tag, std::vector<Int>(g->size(), Int(1)));
}

/// b_l = nu_1 ... nu_{l-1} D_l n_{l+1} ... n_s, so that sum_l b_l tau_l = #G - N.
inline GroupRingElement b_element(const GroupPtr& g, std::size_t l, RingTag tag = RingTag::Full) {
  if (l >= g->rank()) throw std::out_of_range("factor index out of range");
  GroupRingElement x = kolyvagin(g, l, tag);
  for (std::size_t k = 0; k < l; ++k) x = x * nu(g, k, tag);
  for (std::size_t k = l + 1; k < g->rank(); ++k) x *= Int(g->order(k));
  return x;
}

using GroupRingMatrix = RingMatrix<GroupRingElement>;

inline GroupRingElement det_group_ring(const GroupRingMatrix& m, const GroupPtr& g, RingTag tag) {
  return det_ring(m, GroupRingElement(g, tag), GroupRingElement::integer(g, tag, 1));
}

}  // namespace galjac

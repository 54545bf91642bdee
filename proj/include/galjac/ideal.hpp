#pragma once

// Fractional ideals of Z[G] or Z[G]/(N): a G-stable lattice in the coefficient
// coordinates together with one positive denominator, kept in lowest terms.

#include "galjac/group_ring.hpp"
#include "galjac/normal_form.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace galjac {

class IdealLattice {
 public:
  IdealLattice() = default;
  IdealLattice(GroupPtr g, RingTag tag) : group_(std::move(g)), tag_(tag), lat_(coord_dim(*group_, tag_)) {}

  const GroupPtr& group() const { return group_; }
  RingTag tag() const { return tag_; }
  const Lattice& lattice() const { return lat_; }
  const Int& denominator() const { return den_; }
  std::size_t dim() const { return lat_.dim(); }

  bool is_zero() const { return lat_.is_zero(); }
  bool is_integral() const { return den_ == 1; }
  bool is_unit() const { return *this == unit(group_, tag_); }

  static IdealLattice zero(GroupPtr g, RingTag tag) { return IdealLattice(std::move(g), tag); }
  static IdealLattice unit(GroupPtr g, RingTag tag) {
    return from_generators(g, tag, {GroupRingElement::integer(g, tag, 1)});
  }

  /// Ideal generated by gens, divided by den.
  static IdealLattice from_generators(const GroupPtr& g, RingTag tag, const std::vector<GroupRingElement>& gens,
                                      const Int& den = 1) {
    IdealLattice I(g, tag);
    for (const auto& x : gens) {
      if (x.tag() != tag) throw std::invalid_argument("generator lies in the wrong ring");
      for (std::size_t h = 0; h < g->size(); ++h) I.lat_.insert(x.translate(h).coords());
    }
    I.set_denominator(den);
    return I;
  }

  /// Ideal whose Z-basis is already known to be G-stable (only checked in debug use).
  static IdealLattice from_lattice(const GroupPtr& g, RingTag tag, Lattice lat, const Int& den = 1) {
    IdealLattice I(g, tag);
    if (lat.dim() != I.lat_.dim()) throw std::invalid_argument("lattice dimension does not match the ring");
    I.lat_ = std::move(lat);
    I.set_denominator(den);
    return I;
  }

  /// Elements of a Z-basis, all sharing denominator().
  std::vector<GroupRingElement> generators() const {
    std::vector<GroupRingElement> out;
    for (const auto& r : lat_.basis()) out.push_back(GroupRingElement::from_coords(group_, tag_, r));
    return out;
  }

  /// Multiplying any basis vector by any sigma_l stays inside the lattice.
  bool is_gamma_stable() const {
    for (const auto& x : generators())
      for (std::size_t l = 0; l < group_->rank(); ++l)
        if (!lat_.contains(x.translate(group_->generator(l)).coords())) return false;
    return true;
  }

  /// x / den lies in the ideal.
  bool contains(const GroupRingElement& x, const Int& den = 1) const {
    check(x.tag());
    // x/den in L/d  <=>  d x in den L
    auto v = x.coords();
    for (auto& c : v) c *= den_;
    return lat_.scaled_by(den).contains(v);
  }

  /// other is a subset of *this.
  bool contains(const IdealLattice& other) const {
    check(other);
    return lat_.scaled_by(other.den_).contains(other.lat_.scaled_by(den_));
  }

  IdealLattice iota() const {
    IdealLattice I(group_, tag_);
    for (const auto& x : generators()) I.lat_.insert(x.iota().coords());
    I.set_denominator(den_);
    return I;
  }

  IdealLattice times(const GroupRingElement& x, const Int& den = 1) const {
    IdealLattice I(group_, tag_);
    for (const auto& y : generators()) I.lat_.insert((x * y).coords());
    I.set_denominator(den_ * den);
    return I;
  }

  friend IdealLattice operator*(const IdealLattice& a, const IdealLattice& b) {
    a.check(b);
    IdealLattice I(a.group_, a.tag_);
    const auto ga = a.generators(), gb = b.generators();
    for (const auto& x : ga)
      for (const auto& y : gb) I.lat_.insert((x * y).coords());
    I.set_denominator(a.den_ * b.den_);
    return I;
  }

  friend IdealLattice operator+(const IdealLattice& a, const IdealLattice& b) {
    a.check(b);
    const Int l = lcm(a.den_, b.den_);
    IdealLattice I(a.group_, a.tag_);
    const Lattice sa = a.lat_.scaled_by(l / a.den_), sb = b.lat_.scaled_by(l / b.den_);
    for (const auto& r : sa.basis()) I.lat_.insert(r);
    for (const auto& r : sb.basis()) I.lat_.insert(r);
    I.set_denominator(l);
    return I;
  }

  friend bool operator==(const IdealLattice& a, const IdealLattice& b) {
    return a.tag_ == b.tag_ && *a.group_ == *b.group_ && a.den_ == b.den_ && a.lat_ == b.lat_;
  }

  std::string to_string() const {
    std::string s = "(1/" + den_.get_str() + ")[";
    bool first = true;
    for (const auto& r : lat_.basis()) {
      s += first ? "[" : ", [";
      first = false;
      for (std::size_t j = 0; j < r.size(); ++j) s += (j ? "," : "") + r[j].get_str();
      s += "]";
    }
    return s + "]";
  }

 private:
  static std::size_t coord_dim(const FinAbGroup& g, RingTag tag) {
    return tag == RingTag::Full ? g.size() : g.size() - 1;
  }

  void check(RingTag t) const {
    if (t != tag_) throw std::invalid_argument("ideal ring mismatch");
  }
  void check(const IdealLattice& o) const {
    check(o.tag_);
    if (!(*group_ == *o.group_)) throw std::invalid_argument("ideal group mismatch");
  }

  void set_denominator(const Int& den) {
    if (den <= 0) throw std::invalid_argument("ideal denominator must be positive");
    den_ = den;
    if (lat_.is_zero()) {
      den_ = 1;
      return;
    }
    const Int c = gcd(lat_.content(), den_);
    if (c != 1) {
      lat_ = lat_.divided_by(c);
      den_ /= c;
    }
  }

  GroupPtr group_;
  RingTag tag_ = RingTag::Full;
  Lattice lat_;
  Int den_ = 1;
};

}  // namespace galjac

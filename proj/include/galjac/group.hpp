#pragma once

// Finite groups used as voltage groups and as coefficient groups of group rings.
//
// Element enumeration of FinAbGroup: an element sigma_1^{e_1} ... sigma_s^{e_s}
// with 0 <= e_l < n_l has index sum_l e_l * stride_l where the last factor
// varies fastest (lexicographic order on exponent vectors). Index 0 is the
// identity. Serialized group-ring coefficient vectors and ideal bases use
// this order.

#include <concepts>
#include <cstddef>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace galjac {

/// Minimal interface needed to build derived graphs.
template <class G>
concept VoltageGroup = requires(const G& g, std::size_t a, std::size_t b) {
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.identity() } -> std::convertible_to<std::size_t>;
  { g.mul(a, b) } -> std::convertible_to<std::size_t>;
  { g.inv(a) } -> std::convertible_to<std::size_t>;
};

class FinAbGroup {
 public:
  FinAbGroup() : FinAbGroup(std::vector<long>{}) {}

  explicit FinAbGroup(std::vector<long> orders) : orders_(std::move(orders)) {
    for (long n : orders_)
      if (n < 1) throw std::invalid_argument("cyclic factor order must be >= 1");
    strides_.assign(orders_.size(), 1);
    size_ = 1;
    for (std::size_t l = orders_.size(); l-- > 0;) {
      strides_[l] = size_;
      size_ *= static_cast<std::size_t>(orders_[l]);
    }
    if (size_ <= kTableLimit) {
      table_.resize(size_ * size_);
      for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = 0; b < size_; ++b) table_[a * size_ + b] = mul_slow(a, b);
    }
  }

  std::size_t size() const { return size_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<long>& orders() const { return orders_; }
  long order(std::size_t l) const { return orders_.at(l); }
  std::size_t identity() const { return 0; }

  std::vector<long> exponents(std::size_t idx) const {
    std::vector<long> e(orders_.size());
    for (std::size_t l = 0; l < orders_.size(); ++l) {
      e[l] = static_cast<long>(idx / strides_[l]) % orders_[l];
    }
    return e;
  }

  std::size_t index(const std::vector<long>& e) const {
    if (e.size() != orders_.size()) throw std::invalid_argument("exponent vector length mismatch");
    std::size_t idx = 0;
    for (std::size_t l = 0; l < orders_.size(); ++l) {
      long r = e[l] % orders_[l];
      if (r < 0) r += orders_[l];
      idx += static_cast<std::size_t>(r) * strides_[l];
    }
    return idx;
  }

  /// sigma_l, the fixed generator of the l-th cyclic factor (0-based l).
  std::size_t generator(std::size_t l) const {
    if (l >= orders_.size()) throw std::out_of_range("generator index out of range");
    return orders_[l] == 1 ? 0 : strides_[l];
  }

  std::size_t mul(std::size_t a, std::size_t b) const {
    if (!table_.empty()) return table_[a * size_ + b];
    return mul_slow(a, b);
  }

  std::size_t inv(std::size_t a) const {
    auto e = exponents(a);
    for (auto& x : e) x = -x;
    return index(e);
  }

  std::size_t pow(std::size_t a, long k) const {
    auto e = exponents(a);
    for (auto& x : e) x *= k;
    return index(e);
  }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.orders_ == b.orders_; }

  std::string describe() const {
    if (orders_.empty()) return "trivial";
    std::string s;
    for (std::size_t l = 0; l < orders_.size(); ++l) s += (l ? "x" : "") + std::string("C") + std::to_string(orders_[l]);
    return s;
  }

 private:
  static constexpr std::size_t kTableLimit = 256;

  std::size_t mul_slow(std::size_t a, std::size_t b) const {
    std::size_t idx = 0;
    for (std::size_t l = 0; l < orders_.size(); ++l) {
      const std::size_t n = static_cast<std::size_t>(orders_[l]);
      const std::size_t ea = (a / strides_[l]) % n, eb = (b / strides_[l]) % n;
      idx += ((ea + eb) % n) * strides_[l];
    }
    return idx;
  }

  std::vector<long> orders_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  std::vector<std::size_t> table_;
};

using GroupPtr = std::shared_ptr<const FinAbGroup>;

inline GroupPtr make_group(std::vector<long> orders) {
  return std::make_shared<const FinAbGroup>(std::move(orders));
}

/// Opaque finite group given by a Cayley table; element 0 must be the identity.
class CayleyGroup {
 public:
  explicit CayleyGroup(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
    const std::size_t n = table_.size();
    if (n == 0) throw std::invalid_argument("empty Cayley table");
    inv_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table_[a].size() != n) throw std::invalid_argument("Cayley table is not square");
      if (table_[0][a] != a || table_[a][0] != a) throw std::invalid_argument("element 0 is not the identity");
      for (std::size_t b = 0; b < n; ++b) {
        if (table_[a][b] >= n) throw std::invalid_argument("Cayley table entry out of range");
        if (table_[a][b] == 0) inv_[a] = b;
      }
      if (inv_[a] == n) throw std::invalid_argument("element without inverse in Cayley table");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw std::invalid_argument("Cayley table is not associative");
  }

  /// Symmetric group on three letters, elements listed as permutations of (0,1,2).
  static CayleyGroup symmetric3() {
    const std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b) {
        std::vector<int> c(3);
        for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
        for (std::size_t k = 0; k < 6; ++k)
          if (perms[k] == c) t[a][b] = k;
      }
    return CayleyGroup(std::move(t));
  }

  std::size_t size() const { return table_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inv_[a]; }
  bool is_abelian() const {
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b)
        if (table_[a][b] != table_[b][a]) return false;
    return true;
  }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inv_;
};

static_assert(VoltageGroup<FinAbGroup>);
static_assert(VoltageGroup<CayleyGroup>);

/// Subgroup generated by the given elements (closure under multiplication).
template <VoltageGroup G>
std::vector<bool> generated_subgroup(const G& g, const std::vector<std::size_t>& gens) {
  std::vector<bool> in(g.size(), false);
  std::vector<std::size_t> stack{g.identity()};
  in[g.identity()] = true;
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t s : gens) {
      const std::size_t b = g.mul(a, s);
      if (!in[b]) {
        in[b] = true;
        stack.push_back(b);
      }
    }
  }
  return in;
}

}  // namespace galjac

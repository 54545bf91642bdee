#include "galjac/ideal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace galjac;

namespace {

using E = GroupRingElement;

E rand_elem(const GroupPtr& g, RingTag tag, std::mt19937_64& rng, long range = 4) {
  std::vector<Int> c(g->size());
  for (auto& x : c) x = static_cast<long>(rng() % (2 * range + 1)) - range;
  return E(g, tag, c);
}

GroupRingMatrix rand_matrix(const GroupPtr& g, std::size_t n, std::mt19937_64& rng, long range = 3) {
  GroupRingMatrix m(n, std::vector<E>(n));
  for (auto& row : m)
    for (auto& x : row) x = rand_elem(g, RingTag::Full, rng, range);
  return m;
}

GroupRingMatrix mat_mul(const GroupRingMatrix& a, const GroupRingMatrix& b, const GroupPtr& g) {
  const std::size_t n = a.size();
  GroupRingMatrix c(n, std::vector<E>(n, E(g, RingTag::Full)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Character-evaluation oracle: the determinant over Z[G] is recovered from the
// complex determinants of all character images by Fourier inversion.
std::vector<Int> det_by_characters(const GroupRingMatrix& m, const GroupPtr& g) {
  using C = std::complex<double>;
  const std::size_t n = m.size(), N = g->size();
  auto chi = [&](std::size_t k, std::size_t x) {
    const auto ek = g->exponents(k), ex = g->exponents(x);
    double phase = 0;
    for (std::size_t l = 0; l < ek.size(); ++l) phase += static_cast<double>(ek[l] * ex[l]) / g->order(l);
    return std::polar(1.0, 2 * M_PI * phase);
  };
  std::vector<C> dets(N);
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<std::vector<C>> a(n, std::vector<C>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t x = 0; x < N; ++x) a[i][j] += m[i][j].coeff(x).get_d() * chi(k, x);
    C d = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      for (std::size_t r = c; r < n; ++r)
        if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
      if (std::abs(a[p][c]) < 1e-12) {
        d = 0;
        break;
      }
      if (p != c) {
        std::swap(a[p], a[c]);
        d = -d;
      }
      d *= a[c][c];
      for (std::size_t r = c + 1; r < n; ++r) {
        const C f = a[r][c] / a[c][c];
        for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      }
    }
    dets[k] = d;
  }
  std::vector<Int> coeffs(N);
  for (std::size_t x = 0; x < N; ++x) {
    C s = 0;
    for (std::size_t k = 0; k < N; ++k) s += dets[k] * std::conj(chi(k, x));
    coeffs[x] = static_cast<long>(std::llround(s.real() / static_cast<double>(N)));
  }
  return coeffs;
}

const std::vector<std::vector<long>> kSmallGroups = {{2}, {3}, {4}, {5}, {6}, {2, 2}, {2, 3}, {2, 4}, {3, 3}, {2, 2, 2}};

}  // namespace

TEST(Group, Construction) {
  auto c2 = make_group({2});
  EXPECT_EQ(c2->size(), 2u);
  auto v4 = make_group({2, 2});
  EXPECT_EQ(v4->size(), 4u);
  EXPECT_EQ(v4->mul(v4->generator(0), v4->generator(0)), 0u);
  auto c6 = make_group({6});
  std::size_t s = c6->generator(0), x = s;
  int ord = 1;
  while (x != 0) {
    x = c6->mul(x, s);
    ++ord;
  }
  EXPECT_EQ(ord, 6);
  EXPECT_EQ(make_group({})->size(), 1u);
  EXPECT_THROW(make_group({0}), std::invalid_argument);
  // last factor varies fastest
  EXPECT_EQ(v4->exponents(1), (std::vector<long>{0, 1}));
}

TEST(SpecialElements, CyclicExamples) {
  auto g = make_group({2});
  const E one = E::integer(g, RingTag::Full, 1);
  EXPECT_EQ(kolyvagin(g, 0), sigma(g, 0));
  EXPECT_EQ(tau(g, 0) * kolyvagin(g, 0), E::integer(g, RingTag::Full, 2) - nu(g, 0));
  EXPECT_EQ(nu(g, 0), one + sigma(g, 0));
  auto g3 = make_group({3});
  EXPECT_EQ(kolyvagin(g3, 0), E(g3, RingTag::Full, {0, 1, 2}));
  EXPECT_EQ(tau(g3, 0) * kolyvagin(g3, 0), E::integer(g3, RingTag::Full, 3) - nu(g3, 0));
}

TEST(SpecialElements, IdentitiesOnManyGroups) {
  for (const auto& orders : kSmallGroups) {
    auto g = make_group(orders);
    const E N = norm_element(g);
    E prod_nu = E::integer(g, RingTag::Full, 1);
    E sum_b = E(g, RingTag::Full);
    for (std::size_t l = 0; l < g->rank(); ++l) {
      EXPECT_TRUE((tau(g, l) * nu(g, l)).is_zero());
      EXPECT_EQ(tau(g, l) * kolyvagin(g, l), E::integer(g, RingTag::Full, g->order(l)) - nu(g, l));
      EXPECT_TRUE((N * tau(g, l)).is_zero());
      prod_nu = prod_nu * nu(g, l);
      sum_b += b_element(g, l) * tau(g, l);
    }
    EXPECT_EQ(prod_nu, N);
    EXPECT_EQ(sum_b, E::integer(g, RingTag::Full, static_cast<long>(g->size())) - N);
  }
  EXPECT_THROW(b_element(make_group({2}), 1), std::out_of_range);
}

TEST(Ring, QuotientNormalization) {
  auto g = make_group({2});
  E n = norm_element(g, RingTag::Quotient);
  EXPECT_TRUE(n.is_zero());
  E one = E::integer(g, RingTag::Quotient, 1);
  EXPECT_EQ(one, -sigma(g, 0, RingTag::Quotient));
  EXPECT_EQ(one.coeff(0), 0);
  EXPECT_THROW(one + E::integer(g, RingTag::Full, 1), std::invalid_argument);
}

TEST(Ring, InvolutionExamples) {
  for (long n = 2; n <= 7; ++n) {
    auto g = make_group({n});
    E s = sigma(g, 0);
    EXPECT_EQ(s * E::basis(g, RingTag::Full, g->pow(s.coeffs()[0] == 1 ? 0 : g->generator(0), n - 1)),
              E::integer(g, RingTag::Full, 1));
    EXPECT_EQ(tau(g, 0).iota(), -(s.iota() * tau(g, 0)));
    EXPECT_EQ(norm_element(g).iota(), norm_element(g));
  }
}

TEST(Ring, AlgebraicLawsRandomized) {
  std::mt19937_64 rng(1);
  for (const auto& orders : kSmallGroups)
    for (RingTag tag : {RingTag::Full, RingTag::Quotient}) {
      auto g = make_group(orders);
      for (int t = 0; t < 10; ++t) {
        E x = rand_elem(g, tag, rng), y = rand_elem(g, tag, rng), z = rand_elem(g, tag, rng);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ((x * y).iota(), x.iota() * y.iota());
        EXPECT_EQ(x.iota().iota(), x);
        // reduction is a ring map
        if (tag == RingTag::Full) {
          EXPECT_EQ((x * y).reduce(), x.reduce() * y.reduce());
        }
      }
    }
}

TEST(Determinant, SmallExamples) {
  auto g = make_group({3});
  E s = sigma(g, 0);
  EXPECT_EQ(det_group_ring({{s}}, g, RingTag::Full), s);
  E a = s + E::integer(g, RingTag::Full, 2), b = tau(g, 0);
  EXPECT_EQ(det_group_ring({{a, E(g, RingTag::Full)}, {E(g, RingTag::Full), b}}, g, RingTag::Full), a * b);
  EXPECT_EQ(det_group_ring({}, g, RingTag::Full), E::integer(g, RingTag::Full, 1));
  EXPECT_THROW(det_group_ring({{s, s}}, g, RingTag::Full), std::invalid_argument);
}

TEST(Determinant, CharacterOracleAgrees) {
  std::mt19937_64 rng(2);
  auto c2 = make_group({2});
  E two_minus = E::integer(c2, RingTag::Full, 2) - sigma(c2, 0) - sigma(c2, 0);
  GroupRingMatrix m{{two_minus, sigma(c2, 0)}, {tau(c2, 0), E::integer(c2, RingTag::Full, 3)}};
  EXPECT_EQ(det_group_ring(m, c2, RingTag::Full).coeffs(), det_by_characters(m, c2));
  for (const auto& orders : kSmallGroups) {
    auto g = make_group(orders);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto a = rand_matrix(g, n, rng);
      EXPECT_EQ(det_group_ring(a, g, RingTag::Full).coeffs(), det_by_characters(a, g));
    }
  }
}

TEST(Determinant, Multiplicative) {
  std::mt19937_64 rng(3);
  for (const auto& orders : std::vector<std::vector<long>>{{2}, {3}, {4}, {5}, {6}, {2, 2}, {2, 3}})
    for (std::size_t n : {2u, 3u}) {
      auto g = make_group(orders);
      auto a = rand_matrix(g, n, rng), b = rand_matrix(g, n, rng);
      EXPECT_EQ(det_group_ring(mat_mul(a, b, g), g, RingTag::Full),
                det_group_ring(a, g, RingTag::Full) * det_group_ring(b, g, RingTag::Full));
    }
}

TEST(Determinant, BerkowitzMatchesCofactor) {
  std::mt19937_64 rng(4);
  auto g = make_group({2, 2});
  for (std::size_t n = 1; n <= 6; ++n)
    for (RingTag tag : {RingTag::Full, RingTag::Quotient}) {
      GroupRingMatrix a(n, std::vector<E>(n));
      for (auto& row : a)
        for (auto& x : row) x = rand_elem(g, tag, rng, 2);
      const E zero(g, tag), one = E::integer(g, tag, 1);
      EXPECT_EQ(det_cofactor(a, zero, one), det_berkowitz(a, zero, one));
    }
  // larger integer case through the generic path
  RingMatrix<Int> m(12, std::vector<Int>(12));
  IntMatrix im(12, 12);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) im(i, j) = m[i][j] = static_cast<long>(rng() % 21) - 10;
  EXPECT_EQ(det_ring(m, Int(0), Int(1)), determinant_bareiss(im));
}

TEST(Ideal, GeneratorExamples) {
  auto g = make_group({2});
  auto two = IdealLattice::from_generators(g, RingTag::Full, {E::integer(g, RingTag::Full, 2)});
  EXPECT_EQ(two.lattice().basis(), (std::vector<std::vector<Int>>{{2, 0}, {0, 2}}));
  auto t = IdealLattice::from_generators(g, RingTag::Full, {tau(g, 0)});
  EXPECT_EQ(t.lattice().rank(), 1u);
  EXPECT_TRUE(t.contains(-tau(g, 0)));
  auto n = IdealLattice::from_generators(g, RingTag::Full, {norm_element(g)});
  EXPECT_EQ(n.lattice().basis(), (std::vector<std::vector<Int>>{{1, 1}}));
  EXPECT_TRUE(IdealLattice::from_generators(g, RingTag::Full, {}).is_zero());
}

TEST(Ideal, Operations) {
  for (long n = 2; n <= 6; ++n) {
    auto g = make_group({n});
    auto T = IdealLattice::from_generators(g, RingTag::Full, {tau(g, 0)});
    auto V = IdealLattice::from_generators(g, RingTag::Full, {nu(g, 0)});
    EXPECT_TRUE((T * V).is_zero());
    auto R = IdealLattice::unit(g, RingTag::Full);
    EXPECT_EQ(T * R, T);
    EXPECT_TRUE(R.contains(T));
    EXPECT_FALSE(T.contains(R));
  }
  auto g = make_group({2});
  auto two = IdealLattice::from_generators(g, RingTag::Full, {E::integer(g, RingTag::Full, 2)});
  auto three = IdealLattice::from_generators(g, RingTag::Full, {E::integer(g, RingTag::Full, 3)});
  EXPECT_TRUE((two + three).is_unit());
}

TEST(Ideal, FractionalNormalizationAndStability) {
  std::mt19937_64 rng(9);
  for (const auto& orders : kSmallGroups)
    for (RingTag tag : {RingTag::Full, RingTag::Quotient}) {
      auto g = make_group(orders);
      std::vector<E> gens{rand_elem(g, tag, rng) * Int(6), rand_elem(g, tag, rng) * Int(4)};
      auto I = IdealLattice::from_generators(g, tag, gens, 4);
      EXPECT_TRUE(I.is_gamma_stable());
      auto again = IdealLattice::from_lattice(g, tag, I.lattice(), I.denominator());
      EXPECT_EQ(again, I);
      EXPECT_EQ(gcd(I.lattice().content(), I.denominator()), 1);
      EXPECT_EQ(I.iota().iota(), I);
      for (const auto& x : gens) EXPECT_TRUE(I.contains(x, 4));
    }
  auto g = make_group({3});
  auto half = IdealLattice::from_generators(g, RingTag::Full, {E::integer(g, RingTag::Full, 2)}, 4);
  EXPECT_EQ(half.denominator(), 2);
  EXPECT_EQ(half, IdealLattice::from_generators(g, RingTag::Full, {E::integer(g, RingTag::Full, 1)}, 2));
}

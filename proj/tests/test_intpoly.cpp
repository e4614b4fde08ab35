#include <gtest/gtest.h>

#include <random>

#include "fitlab/intpoly.hpp"

using namespace fitlab;

namespace {

IntPoly P(const char* s) { return IntPoly::parse(s); }

// Sylvester matrix determinant by fraction-free Bareiss elimination.
BigInt sylvester_resultant(const IntPoly& a, const IntPoly& b) {
  const int m = a.degree(), n = b.degree();
  const int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> M(size, std::vector<BigInt>(size, BigInt(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = b.coeff(n - j);
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (M[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < size; ++i)
        if (M[i][k] != 0) swap_row = i;
      if (swap_row < 0) return 0;
      std::swap(M[k], M[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign * M[size - 1][size - 1];
}

IntPoly random_poly(std::mt19937_64& rng, int max_deg, long long max_coeff) {
  std::vector<BigInt> c(rng() % (max_deg + 1) + 1);
  for (auto& v : c) v = static_cast<long long>(rng() % (2 * max_coeff + 1)) - max_coeff;
  if (c.back() == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

std::vector<std::uint64_t> naive_mod(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b, std::uint64_t p) {
  // b monic assumed
  while (a.size() >= b.size()) {
    const auto c = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + (p - c) * b[j]) % p;
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

}  // namespace

TEST(Parse, RoundTrip) {
  EXPECT_EQ(P("x^3 - 2*x + 1"), (IntPoly{1, -2, 0, 1}));
  EXPECT_EQ(P("-x"), (IntPoly{0, -1}));
  EXPECT_EQ(P("3x^2+2x+1"), (IntPoly{1, 2, 3}));
  EXPECT_EQ(P("0"), IntPoly{});
  EXPECT_EQ(P("x + x"), (IntPoly{0, 2}));
  for (const char* s : {"x^3 - 2*x + 1", "-4*x", "x^24 - 1", "7", "-x^2 + x - 1", "0"}) EXPECT_EQ(P(s).to_string(), s);
}

TEST(Parse, RejectsNonIntegerAndGarbage) {
  EXPECT_THROW(P("0.5*x + 1"), std::invalid_argument);
  EXPECT_THROW(P("x/2"), std::invalid_argument);
  EXPECT_THROW(P("y + 1"), std::invalid_argument);
  EXPECT_THROW(P(""), std::invalid_argument);
  EXPECT_THROW(P("x^"), std::invalid_argument);
  EXPECT_THROW(P("2 3"), std::invalid_argument);
}

TEST(Content, Examples) {
  auto [a, g] = content_and_primitive(P("6*x^2 + 4*x + 2"));
  EXPECT_EQ(a, 2);
  EXPECT_EQ(g, P("3*x^2 + 2*x + 1"));
  auto [b, h] = content_and_primitive(P("x - 1"));
  EXPECT_EQ(b, 1);
  EXPECT_EQ(h, P("x - 1"));
  auto [c, k] = content_and_primitive(P("-4*x"));
  EXPECT_EQ(c, 4);
  EXPECT_EQ(k, P("-x"));
  EXPECT_THROW(content_and_primitive(IntPoly{}), std::domain_error);
}

TEST(GcdZ, Examples) {
  EXPECT_EQ(gcd_z(P("x^2 - 1"), P("x^2 - 2*x + 1")), P("x - 1"));
  EXPECT_EQ(gcd_z(P("x - 2"), IntPoly::x_pow_minus_one(24)), P("1"));
  EXPECT_EQ(gcd_z(P("-6*x^2 + 6"), IntPoly{}), P("x^2 - 1"));
  EXPECT_THROW(gcd_z(IntPoly{}, IntPoly{}), std::domain_error);
}

TEST(Resultant, Examples) {
  EXPECT_EQ(resultant(P("x - 2"), P("x^3 - 1")), 7);
  EXPECT_EQ(sylvester_resultant(P("x - 2"), P("x^3 - 1")), 7);
  EXPECT_EQ(resultant(P("x - 1"), P("x + 1")), 2);
  EXPECT_EQ(sylvester_resultant(P("x - 1"), P("x + 1")), 2);
  EXPECT_EQ(resultant(P("x - 1"), P("x^2 - 1")), 0);
  EXPECT_EQ(resultant(P("x - 2"), IntPoly::x_pow_minus_one(24)), BigInt(16777215));
  EXPECT_THROW(resultant(IntPoly{}, P("x")), std::domain_error);
}

TEST(Resultant, AgreesWithSylvesterDeterminant) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    IntPoly a = random_poly(rng, 6, 9), b = random_poly(rng, 6, 9);
    if (i % 10 == 0) {
      IntPoly common = random_poly(rng, 2, 3);
      if (common.degree() >= 1) {
        a = a * common;
        b = b * common;
      }
    }
    if (a.degree() > 12 || b.degree() > 12) continue;
    const BigInt r = resultant(a, b);
    EXPECT_EQ(r, sylvester_resultant(a, b)) << a << " | " << b;
    const IntPoly g = gcd_z(a, b);
    EXPECT_EQ(r == 0, g.degree() > 0) << a << " | " << b;
    EXPECT_TRUE(divide_exact(a, g).has_value());
    EXPECT_TRUE(divide_exact(b, g).has_value());
  }
}

TEST(Cyclotomic, Examples) {
  EXPECT_EQ(cyclotomic(1), P("x - 1"));
  EXPECT_EQ(cyclotomic(2), P("x + 1"));
  EXPECT_EQ(cyclotomic(6), P("x^2 - x + 1"));
  EXPECT_EQ(cyclotomic(105).coeff(7), -2);  // first n with a coefficient outside {-1, 0, 1}
  EXPECT_THROW(cyclotomic(0), std::invalid_argument);
}

TEST(Cyclotomic, ProductOverDivisorsIsXnMinusOne) {
  for (std::uint64_t n = 1; n <= 100; ++n) {
    IntPoly prod{1};
    for (auto d : divisors(n)) prod = prod * cyclotomic(d);
    EXPECT_EQ(prod, IntPoly::x_pow_minus_one(n)) << n;
    EXPECT_EQ(cyclotomic(n).degree(), static_cast<int>(numth::euler_phi(n)));
  }
}

TEST(CyclotomicDivisors, Examples) {
  EXPECT_EQ(cyclotomic_divisors(P("x^2 - 3*x + 2")), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(cyclotomic_divisors(P("x^2 + x + 1")), (std::vector<std::uint64_t>{3}));
  const IntPoly f = P("x + 1") * P("x + 1") * P("x^2 - 2");
  EXPECT_EQ(cyclotomic_divisors(f), (std::vector<std::uint64_t>{2}));
  EXPECT_TRUE(cyclotomic_divisors(P("5")).empty());
  const IntPoly g = cyclotomic(1) * cyclotomic(8) * cyclotomic(9);
  EXPECT_EQ(cyclotomic_divisors(g), (std::vector<std::uint64_t>{1, 8, 9}));
}

TEST(ModPoly, GcdExamples) {
  auto m = [](std::uint64_t p, const char* s) { return ModPoly::reduce(IntPoly::parse(s), p); };
  EXPECT_EQ(mod_gcd(m(7, "x^2 - 1"), m(7, "x - 1")), m(7, "x - 1"));
  EXPECT_EQ(mod_gcd(m(5, "x^2 + 1"), m(5, "x^2 + x + 1")), m(5, "1"));
  EXPECT_EQ(mod_gcd(m(5, "0"), m(5, "x + 3")), m(5, "x + 3"));
  EXPECT_THROW(mod_gcd(m(5, "x"), m(7, "x")), std::invalid_argument);
  EXPECT_THROW(mod_gcd(m(5, "0"), m(5, "0")), std::domain_error);
  EXPECT_EQ(m(5, "-1").coeffs(), (std::vector<std::uint64_t>{4}));
}

TEST(PowmodFactorial, Examples) {
  auto m = [](std::uint64_t p, const char* s) { return ModPoly::reduce(IntPoly::parse(s), p); };
  EXPECT_EQ(powmod_factorial(m(5, "x^2 - 2"), 3), m(5, "3"));
  EXPECT_EQ(powmod_factorial(m(11, "x - 1"), 50), m(11, "1"));
  EXPECT_EQ(powmod_factorial(m(3, "x^2 + 1"), 4), m(3, "1"));
  EXPECT_THROW(powmod_factorial(m(5, "3"), 3), std::domain_error);
  EXPECT_THROW(powmod_factorial(P("5*x + 1"), 5, 3), std::domain_error);
  EXPECT_THROW(powmod_factorial(m(5, "x"), 0), std::invalid_argument);
}

TEST(PowmodFactorial, MatchesNaiveExponent) {
  std::mt19937_64 rng(99);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 101};
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint64_t p = primes[rng() % 7];
    const std::size_t deg = rng() % 4 + 1;
    std::vector<std::uint64_t> h(deg + 1);
    for (auto& c : h) c = rng() % p;
    h.back() = 1;
    const ModPoly hp(p, h);
    for (std::uint64_t mm = 1; mm <= 7; ++mm) {
      std::uint64_t fact = 1;
      for (std::uint64_t k = 2; k <= mm; ++k) fact *= k;
      // x^fact mod h by repeated multiplication by x
      std::vector<std::uint64_t> r{1};
      for (std::uint64_t i = 0; i < fact; ++i) {
        r.insert(r.begin(), 0);
        r = naive_mod(r, h, p);
      }
      EXPECT_EQ(powmod_factorial(hp, mm), ModPoly(p, r)) << "p=" << p << " m=" << mm;
    }
  }
}

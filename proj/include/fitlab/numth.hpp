#pragma once

// Elementary number theory: sieving, certified prime-counting bound checks,
// integer factorization, alpha (big omega), Euler phi and multiplicative orders.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "fitlab/common.hpp"

namespace fitlab::numth {

inline constexpr std::uint64_t kSieveCap = 100'000'000;

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  if (n < (1ull << 32)) {
    // bases 2, 7, 61 are deterministic below 4759123141; products fit in 64 bits
    for (std::uint64_t a : {2ull, 7ull, 61ull}) {
      std::uint64_t x = 1, b = a % n, e = d;
      for (; e; e >>= 1, b = b * b % n)
        if (e & 1) x = x * b % n;
      if (x == 1 || x == n - 1 || a % n == 0) continue;
      bool composite = true;
      for (int r = 1; r < s && composite; ++r) {
        x = x * x % n;
        composite = x != n - 1;
      }
      if (composite) return false;
    }
    return true;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime(static_cast<std::uint64_t>(n));
  std::mt19937_64 gen(0x5eedULL);
  return boost::multiprecision::miller_rabin_test(n, 40, gen);
}

/// All primes in [2, bound], by an odd-only sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  if (bound < 2) throw std::invalid_argument("primes_up_to: bound must be at least 2");
  if (bound > kSieveCap) throw CapExceeded("primes_up_to: bound exceeds sieve cap 10^8");
  // composite[i] describes the odd number 2i+1
  std::vector<bool> composite(bound / 2 + 1, false);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= bound; ++i) {
    if (composite[i]) continue;
    std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = p * p; j <= bound; j += 2 * p) composite[j / 2] = true;
  }
  std::vector<std::uint64_t> out{2};
  for (std::uint64_t i = 1; 2 * i + 1 <= bound; ++i)
    if (!composite[i]) out.push_back(2 * i + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Certified natural logarithm
// ---------------------------------------------------------------------------

/// Closed interval [lo, hi] / 2^kLnFracBits containing ln(x).
struct LnBracket {
  unsigned __int128 lo = 0;
  unsigned __int128 hi = 0;
};

inline constexpr int kLnFracBits = 60;

namespace detail {

using u128 = unsigned __int128;

inline u128 ceil_div(u128 a, u128 b) { return a / b + (a % b != 0); }

// Bracket for 2*atanh(num/den) = ln((den+num)/(den-num)), valid for num/den <= 1/3.
inline LnBracket two_atanh(std::uint64_t num, std::uint64_t den) {
  constexpr int kTerms = 24;
  const u128 scaled = static_cast<u128>(num) << kLnFracBits;
  u128 z_lo = scaled / den;
  u128 z_hi = ceil_div(scaled, den);
  u128 z2_lo = (z_lo * z_lo) >> kLnFracBits;
  u128 z2_hi = ceil_div(z_hi * z_hi, static_cast<u128>(1) << kLnFracBits);
  u128 pow_lo = z_lo, pow_hi = z_hi;
  u128 sum_lo = 0, sum_hi = 0;
  for (int i = 0; i < kTerms; ++i) {
    const u128 j = 2 * static_cast<u128>(i) + 1;
    sum_lo += pow_lo / j;
    sum_hi += ceil_div(pow_hi, j);
    pow_lo = (pow_lo * z2_lo) >> kLnFracBits;
    pow_hi = ceil_div(pow_hi * z2_hi, static_cast<u128>(1) << kLnFracBits);
  }
  // tail: sum_{i>=N} z^(2i+1)/(2i+1) <= z^(2N+1) / ((2N+1)(1-z^2)) <= z^(2N+1) * 9 / (8(2N+1))
  sum_hi += ceil_div(pow_hi * 9, static_cast<u128>(8) * (2 * kTerms + 1));
  return {2 * sum_lo, 2 * sum_hi};
}

}  // namespace detail

/// Rigorous rational bracket of ln(x) for x >= 1, using ln x = k ln 2 + 2 atanh((x-2^k)/(x+2^k)).
inline LnBracket certified_ln(std::uint64_t x) {
  if (x == 0) throw std::domain_error("certified_ln: x must be positive");
  if (x >= (1ull << 40)) throw std::domain_error("certified_ln: x too large for fixed-point bracket");
  static const LnBracket ln2 = detail::two_atanh(1, 3);
  int k = 63 - __builtin_clzll(x);
  const std::uint64_t pow2 = 1ull << k;
  LnBracket y = detail::two_atanh(x - pow2, x + pow2);
  return {static_cast<unsigned __int128>(k) * ln2.lo + y.lo, static_cast<unsigned __int128>(k) * ln2.hi + y.hi};
}

struct PiBoundCheck {
  /// Integers x where pi(x) >= 1.25506 x / ln x is certified.
  std::vector<std::uint64_t> violations;
  /// Integers where the bracket was too wide to decide; expected to stay empty.
  std::vector<std::uint64_t> undecided;
  std::uint64_t checked = 0;

  bool ok() const { return violations.empty() && undecided.empty(); }
};

/// Checks pi(x) < 1.25506 * x / ln(x) for every integer 2 <= x <= bound with an exact
/// integer comparison against a certified bracket of ln(x).
inline PiBoundCheck rosser_schoenfeld_check(std::uint64_t bound) {
  if (bound < 2) throw std::invalid_argument("rosser_schoenfeld_check: bound must be at least 2");
  using u128 = unsigned __int128;
  constexpr std::uint64_t kNum = 125506, kDen = 100000;
  const auto primes = primes_up_to(bound);
  PiBoundCheck out;
  std::uint64_t pi = 0;
  std::size_t next = 0;
  for (std::uint64_t x = 2; x <= bound; ++x) {
    while (next < primes.size() && primes[next] <= x) {
      ++pi;
      ++next;
    }
    const LnBracket ln = certified_ln(x);
    const u128 rhs = static_cast<u128>(kNum) * x << kLnFracBits;
    if (static_cast<u128>(pi) * kDen * ln.hi < rhs) {
      // holds
    } else if (static_cast<u128>(pi) * kDen * ln.lo >= rhs) {
      out.violations.push_back(x);
    } else {
      out.undecided.push_back(x);
    }
    ++out.checked;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

/// n together with its prime factorization; the product of p^e over factors is value.
struct FactoredInteger {
  BigInt value;
  std::map<BigInt, unsigned> factors;

  unsigned alpha() const {
    unsigned s = 0;
    for (const auto& [p, e] : factors) s += e;
    return s;
  }
};

namespace detail {

inline std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t seed) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(seed);
  while (true) {
    std::uint64_t y = rng() % (n - 1) + 1, c = rng() % (n - 1) + 1, m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline BigInt pollard_rho_big(const BigInt& n, std::uint64_t seed) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(seed);
  while (true) {
    BigInt x = BigInt(rng()) % n, y = x, c = BigInt(rng()) % n + 1, g = 1;
    while (g == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      g = big_gcd(x - y, n);
    }
    if (g != n) return g;
  }
}

inline void factor_into(const BigInt& n, std::map<BigInt, unsigned>& out, std::uint64_t seed) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  BigInt d;
  if (n <= std::numeric_limits<std::uint64_t>::max())
    d = pollard_brent(static_cast<std::uint64_t>(n), seed);
  else
    d = pollard_rho_big(n, seed);
  factor_into(d, out, seed + 1);
  factor_into(n / d, out, seed + 2);
}

}  // namespace detail

/// Trial division by small primes, then Pollard rho on the cofactor.
inline FactoredInteger factor(const BigInt& n) {
  if (n <= 0) throw std::invalid_argument("factor: n must be positive");
  FactoredInteger out{n, {}};
  BigInt rest = n;
  for (std::uint64_t p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    while (rest % p == 0) {
      rest /= p;
      ++out.factors[BigInt(p)];
    }
  }
  detail::factor_into(rest, out.factors, 1);
  return out;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : factor(BigInt(n)).factors) out.push_back(static_cast<std::uint64_t>(p));
  return out;
}

/// Number of prime divisors counted with multiplicity; alpha(1) = 0.
inline unsigned alpha(const BigInt& n) {
  if (n <= 0) throw std::invalid_argument("alpha: n must be positive");
  return factor(n).alpha();
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
  std::uint64_t result = n;
  for (std::uint64_t p : prime_divisors(n)) result = result / p * (p - 1);
  return result;
}

/// Least k >= 1 with a^k = 1 (mod n).
inline std::uint64_t multiplicative_order(std::int64_t a, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("multiplicative_order: modulus must be at least 2");
  std::int64_t r = a % static_cast<std::int64_t>(n);
  if (r < 0) r += static_cast<std::int64_t>(n);
  const auto base = static_cast<std::uint64_t>(r);
  if (gcd_u64(base, n) != 1) throw std::domain_error("multiplicative_order: gcd(a, n) != 1");
  std::uint64_t order = euler_phi(n);
  for (std::uint64_t p : prime_divisors(order)) {
    while (order % p == 0 && powmod(base, order / p, n) == 1) order /= p;
  }
  return order;
}

}  // namespace fitlab::numth

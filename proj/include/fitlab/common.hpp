#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fitlab {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when an exhaustive computation would exceed one of the configured caps.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a statement that must hold by a theorem is observed to fail.
/// Never a soft error: callers are expected to surface it as a test failure.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline BigInt big_abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

inline BigInt big_gcd(BigInt a, BigInt b) {
  a = big_abs(a);
  b = big_abs(b);
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline BigInt big_pow(BigInt base, std::uint64_t e) {
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

/// Least non-negative residue of a modulo m (m > 0).
inline std::uint64_t big_mod_u64(const BigInt& a, std::uint64_t m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

inline std::string to_string(const BigInt& a) { return a.str(); }

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("invmod: element is not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace fitlab

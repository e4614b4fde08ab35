#pragma once

// Exact polynomials over the integers and over prime fields.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fitlab/common.hpp"
#include "fitlab/field.hpp"
#include "fitlab/numth.hpp"

namespace fitlab {

/// Polynomial with arbitrary-precision integer coefficients, ascending by degree.
/// The zero polynomial has no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }
  IntPoly(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(v);
    normalize();
  }

  static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }
  static IntPoly monomial(const BigInt& c, std::size_t n) {
    std::vector<BigInt> v(n + 1, BigInt(0));
    v[n] = c;
    return IntPoly(std::move(v));
  }
  static IntPoly x() { return monomial(1, 1); }
  /// x^n - 1
  static IntPoly x_pow_minus_one(std::size_t n) {
    std::vector<BigInt> v(n + 1, BigInt(0));
    v[n] = 1;
    v[0] -= 1;
    return IntPoly(std::move(v));
  }

  static IntPoly parse(std::string_view text);

  const std::vector<BigInt>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  const BigInt& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  IntPoly operator-() const {
    IntPoly out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
  }
  IntPoly& operator+=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }
  IntPoly& operator-=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
  }
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPoly(std::move(out));
  }
  friend IntPoly operator*(const BigInt& k, const IntPoly& a) {
    std::vector<BigInt> out = a.c_;
    for (auto& v : out) v *= k;
    return IntPoly(std::move(out));
  }
  bool operator==(const IntPoly&) const = default;

  BigInt eval(const BigInt& x) const {
    BigInt acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  IntPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<unsigned long long>(i);
    return IntPoly(std::move(out));
  }

  /// Human-readable form, e.g. "x^3 - 2*x + 1". Inverse of parse().
  std::string to_string() const;

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

/// Degree first, then ascending coefficient vectors lexicographically.
inline bool canonical_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

inline std::ostream& operator<<(std::ostream& os, const IntPoly& f) { return os << f.to_string(); }

inline std::string IntPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const BigInt& v = c_[i];
    if (v == 0) continue;
    const bool negative = v < 0;
    const BigInt mag = negative ? BigInt(-v) : v;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << "x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

inline IntPoly IntPoly::parse(std::string_view text) {
  std::map<std::size_t, BigInt> terms;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> IntPoly {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto read_uint = [&](std::string& digits) {
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) digits += text[pos++];
  };
  for (char ch : text) {
    if (ch == '.' || ch == '/') return fail("non-integer coefficient");
  }
  skip_ws();
  if (pos == text.size()) return fail("empty input");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      return fail("expected '+' or '-' at position " + std::to_string(pos));
    }
    first = false;
    std::string digits;
    read_uint(digits);
    BigInt coeff = digits.empty() ? BigInt(1) : BigInt(digits);
    skip_ws();
    bool has_x = false;
    if (pos < text.size() && text[pos] == '*') {
      if (digits.empty()) return fail("dangling '*'");
      ++pos;
      skip_ws();
      if (pos == text.size() || text[pos] != 'x') return fail("expected 'x' after '*'");
    }
    std::size_t exponent = 0;
    if (pos < text.size() && text[pos] == 'x') {
      has_x = true;
      ++pos;
      exponent = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip_ws();
        std::string e;
        read_uint(e);
        if (e.empty()) return fail("missing exponent");
        if (e.size() > 6) return fail("exponent too large");
        exponent = std::stoul(e);
      }
    }
    if (digits.empty() && !has_x) return fail("expected a term at position " + std::to_string(pos));
    terms[exponent] += sign * coeff;
  }
  std::vector<BigInt> c(terms.empty() ? 0 : terms.rbegin()->first + 1, BigInt(0));
  for (const auto& [e, v] : terms) c[e] = v;
  return IntPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Content, exact division, gcd, resultant
// ---------------------------------------------------------------------------

/// (a, g) with f = a*g, a > 0 and g primitive; g keeps the sign of f's leading coefficient.
inline std::pair<BigInt, IntPoly> content_and_primitive(const IntPoly& f) {
  if (f.is_zero()) throw std::domain_error("undefined content");
  BigInt a = 0;
  for (const auto& v : f.coeffs()) a = big_gcd(a, v);
  std::vector<BigInt> g = f.coeffs();
  for (auto& v : g) v /= a;
  return {a, IntPoly(std::move(g))};
}

inline BigInt content(const IntPoly& f) { return content_and_primitive(f).first; }

/// Primitive part normalized to a positive leading coefficient.
inline IntPoly primitive_positive(const IntPoly& f) {
  IntPoly g = content_and_primitive(f).second;
  return g.leading() < 0 ? -g : g;
}

/// q with f = q*g in Z[x], or nullopt if g does not divide f over the integers.
inline std::optional<IntPoly> divide_exact(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (f.is_zero()) return IntPoly{};
  if (f.degree() < g.degree()) return std::nullopt;
  std::vector<BigInt> rem = f.coeffs();
  const auto& gc = g.coeffs();
  const std::size_t n = gc.size() - 1;
  std::vector<BigInt> quot(rem.size() - n, BigInt(0));
  for (std::size_t i = rem.size(); i-- > n;) {
    if (rem[i] == 0) continue;
    BigInt q, r;
    boost::multiprecision::divide_qr(rem[i], gc[n], q, r);
    if (r != 0) return std::nullopt;
    quot[i - n] = q;
    for (std::size_t j = 0; j <= n; ++j) rem[i - n + j] -= q * gc[j];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (rem[i] != 0) return std::nullopt;
  return IntPoly(std::move(quot));
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a = q b + r with deg r < deg b.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo_remainder by zero");
  if (a.degree() < b.degree()) return a;
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t n = bc.size() - 1;
  const BigInt& lb = bc.back();
  int e = a.degree() - b.degree() + 1;
  while (!r.empty() && r.size() - 1 >= n) {
    const BigInt lr = r.back();
    const std::size_t shift = r.size() - 1 - n;
    for (auto& v : r) v *= lb;
    for (std::size_t j = 0; j <= n; ++j) r[shift + j] -= lr * bc[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    --e;
  }
  return big_pow(lb, static_cast<std::uint64_t>(std::max(e, 0))) * IntPoly(std::move(r));
}

/// Primitive gcd with positive leading coefficient (primitive PRS).
inline IntPoly gcd_z(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() && g.is_zero()) throw std::domain_error("gcd_z: both polynomials are zero");
  if (g.is_zero()) return primitive_positive(f);
  if (f.is_zero()) return primitive_positive(g);
  IntPoly a = primitive_positive(f), b = primitive_positive(g);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? IntPoly{} : content_and_primitive(r).second;
  }
  return primitive_positive(a);
}

/// Resultant via the subresultant polynomial remainder sequence.
inline BigInt resultant(IntPoly a, IntPoly b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("resultant: zero polynomial");
  if (a.degree() == 0 && b.degree() == 0) return 1;
  if (a.degree() == 0) return big_pow(a.leading(), static_cast<std::uint64_t>(b.degree()));
  if (b.degree() == 0) return big_pow(b.leading(), static_cast<std::uint64_t>(a.degree()));

  auto [ca, pa] = content_and_primitive(a);
  auto [cb, pb] = content_and_primitive(b);
  a = std::move(pa);
  b = std::move(pb);
  const BigInt t = big_pow(ca, static_cast<std::uint64_t>(b.degree())) * big_pow(cb, static_cast<std::uint64_t>(a.degree()));
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() & 1) && (b.degree() & 1)) s = -1;
  }
  BigInt g = 1, h = 1;
  while (true) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    const BigInt divisor = g * big_pow(h, static_cast<std::uint64_t>(delta));
    std::vector<BigInt> rc = r.coeffs();
    for (auto& v : rc) v /= divisor;
    b = IntPoly(std::move(rc));
    g = a.leading();
    if (delta > 0) h = big_pow(g, static_cast<std::uint64_t>(delta)) / big_pow(h, static_cast<std::uint64_t>(delta - 1));
    if (b.is_zero()) return 0;
    if (b.degree() == 0) break;
  }
  const auto da = static_cast<std::uint64_t>(a.degree());
  h = big_pow(b.leading(), da) / big_pow(h, da - 1);
  return s * t * h;
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials
// ---------------------------------------------------------------------------

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Phi_n(x), computed by exact division of x^n - 1 by Phi_d for the proper divisors d of n.
inline IntPoly cyclotomic(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
  if (n > 100000) throw CapExceeded("cyclotomic: index too large");
  const auto divs = divisors(n);
  std::map<std::uint64_t, IntPoly> table;
  for (std::uint64_t d : divs) {
    IntPoly phi = IntPoly::x_pow_minus_one(d);
    for (std::uint64_t e : divs) {
      if (e >= d) break;
      if (d % e) continue;
      auto q = divide_exact(phi, table.at(e));
      if (!q) throw std::logic_error("cyclotomic: inexact division");
      phi = std::move(*q);
    }
    table.emplace(d, std::move(phi));
  }
  return table.at(n);
}

/// All n with Phi_n | f, searched over 1 <= n <= 2 deg(f)^2 (phi(n) >= sqrt(n/2)).
inline std::vector<std::uint64_t> cyclotomic_divisors(const IntPoly& f) {
  if (f.is_zero()) throw std::domain_error("cyclotomic_divisors: zero polynomial");
  std::vector<std::uint64_t> out;
  if (f.degree() < 1) return out;
  const auto d = static_cast<std::uint64_t>(f.degree());
  for (std::uint64_t n = 1; n <= 2 * d * d; ++n) {
    if (numth::euler_phi(n) > d) continue;
    if (divide_exact(f, cyclotomic(n))) out.push_back(n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p
// ---------------------------------------------------------------------------

/// Polynomial over the prime field F_p; coefficients reduced, ascending, no trailing zeros.
class ModPoly {
 public:
  ModPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : field_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p;
    fpoly::trim(c_);
  }
  ModPoly(const PrimeField& field, std::vector<std::uint64_t> coeffs) : ModPoly(field.characteristic(), std::move(coeffs)) {}

  static ModPoly reduce(const IntPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> c;
    c.reserve(f.coeffs().size());
    for (const auto& v : f.coeffs()) c.push_back(big_mod_u64(v, p));
    return ModPoly(p, std::move(c));
  }

  std::uint64_t modulus() const { return field_.characteristic(); }
  const PrimeField& field() const { return field_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  int degree() const { return fpoly::degree(c_); }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::uint64_t leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  /// Lift with coefficients in the symmetric range (-p/2, p/2].
  IntPoly lift_symmetric() const {
    std::vector<BigInt> out;
    for (auto v : c_) out.emplace_back(field_.lift_symmetric(v));
    return IntPoly(std::move(out));
  }

  ModPoly monic() const { return {field_, fpoly::monic(field_, c_)}; }

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b) { return {a.check(b), fpoly::add(a.field_, a.c_, b.c_)}; }
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b) { return {a.check(b), fpoly::sub(a.field_, a.c_, b.c_)}; }
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b) { return {a.check(b), fpoly::mul(a.field_, a.c_, b.c_)}; }
  friend ModPoly operator%(const ModPoly& a, const ModPoly& b) { return {a.check(b), fpoly::mod(a.field_, a.c_, b.c_)}; }
  friend ModPoly operator/(const ModPoly& a, const ModPoly& b) { return {a.check(b), fpoly::divmod(a.field_, a.c_, b.c_).first}; }
  bool operator==(const ModPoly& o) const { return modulus() == o.modulus() && c_ == o.c_; }

  std::string to_string() const { return lift_nonnegative().to_string(); }

  IntPoly lift_nonnegative() const {
    std::vector<BigInt> out(c_.begin(), c_.end());
    return IntPoly(std::move(out));
  }

 private:
  const PrimeField& check(const ModPoly& o) const {
    if (modulus() != o.modulus()) throw std::invalid_argument("modulus mismatch");
    return field_;
  }

  PrimeField field_;
  std::vector<std::uint64_t> c_;
};

/// Monic gcd over F_p by Euclid's algorithm.
inline ModPoly mod_gcd(const ModPoly& a, const ModPoly& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("mod_gcd: modulus mismatch");
  if (a.is_zero() && b.is_zero()) throw std::domain_error("mod_gcd: both polynomials are zero");
  return {a.field(), fpoly::gcd(a.field(), a.coeffs(), b.coeffs())};
}

namespace detail {

// Multiplication in F_p[x]/(h) for monic h, without allocation in the inner loop.
class QuotientRing {
 public:
  explicit QuotientRing(const ModPoly& h) : p_(h.modulus()), n_(static_cast<std::size_t>(h.degree())) {
    const ModPoly hm = h.monic();
    tail_.assign(hm.coeffs().begin(), hm.coeffs().end() - 1);
    prod_.resize(2 * n_);
  }

  using Elem = std::vector<std::uint64_t>;  // exactly n_ coefficients

  Elem one() const {
    Elem e(n_, 0);
    if (n_ > 0) e[0] = 1 % p_;
    return e;
  }

  void mul(const Elem& a, const Elem& b, Elem& out) {
    std::fill(prod_.begin(), prod_.end(), 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) prod_[i + j] = (prod_[i + j] + mulmod(a[i], b[j], p_)) % p_;
    }
    // x^n = -sum tail_i x^i
    for (std::size_t k = 2 * n_ - 1; k-- > n_;) {
      const std::uint64_t c = prod_[k];
      if (c == 0) continue;
      prod_[k] = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        const std::uint64_t sub = mulmod(c, tail_[i], p_);
        auto& slot = prod_[k - n_ + i];
        slot = slot >= sub ? slot - sub : slot + p_ - sub;
      }
    }
    std::copy(prod_.begin(), prod_.begin() + static_cast<std::ptrdiff_t>(n_), out.begin());
  }

  void pow(Elem& a, std::uint64_t e) {
    Elem result = one(), base = a, tmp(n_);
    while (e) {
      if (e & 1) {
        mul(result, base, tmp);
        result.swap(tmp);
      }
      e >>= 1;
      if (e) {
        mul(base, base, tmp);
        base.swap(tmp);
      }
    }
    a.swap(result);
  }

 private:
  std::uint64_t p_;
  std::size_t n_;
  std::vector<std::uint64_t> tail_;
  std::vector<std::uint64_t> prod_;
};

}  // namespace detail

/// x^(m!) mod h over F_p, by the staged iteration r <- r^k mod h for k = 2..m.
inline ModPoly powmod_factorial(const ModPoly& h, std::uint64_t m) {
  if (h.degree() < 1) throw std::domain_error("powmod_factorial: modulus must have degree >= 1");
  if (m == 0) throw std::invalid_argument("powmod_factorial: m must be positive");
  detail::QuotientRing ring(h);
  const auto n = static_cast<std::size_t>(h.degree());
  const ModPoly x_mod = ModPoly(h.modulus(), {0, 1}) % h;
  detail::QuotientRing::Elem r(n, 0);
  std::copy(x_mod.coeffs().begin(), x_mod.coeffs().end(), r.begin());
  const auto one = ring.one();
  const detail::QuotientRing::Elem zero(n, 0);
  for (std::uint64_t k = 2; k <= m; ++k) {
    if (r == one || r == zero) break;  // fixed points of r -> r^k
    ring.pow(r, k);
  }
  return ModPoly(h.modulus(), r);
}

/// Variant taking an integer polynomial; rejects leading coefficients divisible by p.
inline ModPoly powmod_factorial(const IntPoly& h, std::uint64_t p, std::uint64_t m) {
  if (h.is_zero() || big_mod_u64(h.leading(), p) == 0)
    throw std::domain_error("powmod_factorial: leading coefficient vanishes modulo p");
  return powmod_factorial(ModPoly::reduce(h, p), m);
}

}  // namespace fitlab

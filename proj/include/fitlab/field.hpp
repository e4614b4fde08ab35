#pragma once

// Finite fields F_p and F_{p^e}, plus dense univariate polynomial algorithms
// over any such field. Polynomials are coefficient vectors, ascending by degree,
// with no trailing zeros (the zero polynomial is the empty vector).

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fitlab/common.hpp"
#include "fitlab/numth.hpp"

namespace fitlab {

template <class F>
concept FiniteField = requires(const F& f, typename F::value_type a, std::int64_t n) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.characteristic() } -> std::same_as<std::uint64_t>;
  { f.size() } -> std::same_as<std::uint64_t>;
  { f.degree() } -> std::same_as<unsigned>;
};

class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!numth::is_prime(p)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
    if (p >= (1ull << 62)) throw std::invalid_argument("PrimeField: modulus too large");
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const { return mulmod(a, b, p_); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    return invmod(a, p_);
  }
  value_type from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  value_type from_big(const BigInt& n) const { return big_mod_u64(n, p_); }
  std::uint64_t characteristic() const { return p_; }
  std::uint64_t size() const { return p_; }
  unsigned degree() const { return 1; }

  /// Elements enumerated as 0..p-1.
  value_type element(std::uint64_t index) const { return index; }
  /// Symmetric representative in (-p/2, p/2].
  std::int64_t lift_symmetric(value_type a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(p_) : static_cast<std::int64_t>(a);
  }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// Generic polynomial algorithms over a field
// ---------------------------------------------------------------------------

namespace fpoly {

template <FiniteField F>
using Poly = std::vector<typename F::value_type>;

template <class V>
void trim(std::vector<V>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class V>
int degree(const std::vector<V>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <FiniteField F>
Poly<F> x_power(const F& f, std::size_t n) {
  Poly<F> out(n + 1, f.zero());
  out[n] = f.one();
  return out;
}

template <FiniteField F>
Poly<F> constant(const F& f, typename F::value_type c) {
  Poly<F> out{c};
  trim(out);
  (void)f;
  return out;
}

template <FiniteField F>
Poly<F> add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> out(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = f.add(out[i], b[i]);
  trim(out);
  return out;
}

template <FiniteField F>
Poly<F> sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> out(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = f.sub(out[i], b[i]);
  trim(out);
  return out;
}

template <FiniteField F>
Poly<F> scale(const F& f, const Poly<F>& a, typename F::value_type c) {
  Poly<F> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], c);
  trim(out);
  return out;
}

template <FiniteField F>
Poly<F> mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> out(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == f.zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

/// Quotient and remainder of a by b (b nonzero).
template <FiniteField F>
std::pair<Poly<F>, Poly<F>> divmod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  Poly<F> rem = a;
  if (rem.size() < b.size()) return {{}, rem};
  Poly<F> quot(rem.size() - b.size() + 1, f.zero());
  const auto lead_inv = f.inv(b.back());
  for (std::size_t i = rem.size(); i-- >= b.size();) {
    const auto c = f.mul(rem[i], lead_inv);
    quot[i - (b.size() - 1)] = c;
    if (c == f.zero()) continue;
    const std::size_t shift = i - (b.size() - 1);
    for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] = f.sub(rem[shift + j], f.mul(c, b[j]));
  }
  trim(quot);
  trim(rem);
  return {std::move(quot), std::move(rem)};
}

template <FiniteField F>
Poly<F> mod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  return divmod(f, a, b).second;
}

template <FiniteField F>
Poly<F> monic(const F& f, const Poly<F>& a) {
  if (a.empty()) return a;
  return scale(f, a, f.inv(a.back()));
}

/// Monic gcd; gcd(0, 0) is the zero polynomial.
template <FiniteField F>
Poly<F> gcd(const F& f, Poly<F> a, Poly<F> b) {
  while (!b.empty()) {
    Poly<F> r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

template <FiniteField F>
Poly<F> lcm(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  return monic(f, divmod(f, mul(f, a, b), gcd(f, a, b)).first);
}

template <FiniteField F>
Poly<F> derivative(const F& f, const Poly<F>& a) {
  if (a.size() <= 1) return {};
  Poly<F> out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = f.mul(a[i], f.from_int(static_cast<std::int64_t>(i % f.characteristic())));
  trim(out);
  return out;
}

template <FiniteField F>
typename F::value_type eval(const F& f, const Poly<F>& a, typename F::value_type x) {
  auto acc = f.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

/// base^e mod m.
template <FiniteField F>
Poly<F> powmod(const F& f, Poly<F> base, BigInt e, const Poly<F>& m) {
  Poly<F> result = mod(f, Poly<F>{f.one()}, m);
  base = mod(f, base, m);
  while (e > 0) {
    if ((e & 1) != 0) result = mod(f, mul(f, result, base), m);
    e >>= 1;
    if (e > 0) base = mod(f, mul(f, base, base), m);
  }
  return result;
}

template <FiniteField F>
typename F::value_type pow(const F& f, typename F::value_type a, BigInt e) {
  auto r = f.one();
  while (e > 0) {
    if ((e & 1) != 0) r = f.mul(r, a);
    e >>= 1;
    if (e > 0) a = f.mul(a, a);
  }
  return r;
}

/// Squarefree decomposition of a monic polynomial: pairs (factor, multiplicity),
/// each factor squarefree and monic, product of factor^multiplicity = a.
template <FiniteField F>
std::vector<std::pair<Poly<F>, unsigned>> squarefree_decomposition(const F& f, const Poly<F>& a) {
  std::vector<std::pair<Poly<F>, unsigned>> out;
  if (a.size() <= 1) return out;
  const std::uint64_t p = f.characteristic();
  Poly<F> c = gcd(f, a, derivative(f, a));
  Poly<F> w = divmod(f, a, c).first;
  unsigned i = 1;
  while (w.size() > 1) {
    Poly<F> y = gcd(f, w, c);
    Poly<F> z = divmod(f, w, y).first;
    if (z.size() > 1) out.emplace_back(monic(f, z), i);
    ++i;
    w = std::move(y);
    c = divmod(f, c, w).first;
  }
  if (c.size() > 1) {
    // c is a p-th power: take the p-th root coefficientwise (a^(1/p) = a^(q/p))
    const BigInt root_exp = BigInt(f.size()) / p;
    Poly<F> root((c.size() - 1) / p + 1, f.zero());
    for (std::size_t k = 0; k * p < c.size(); ++k) root[k] = pow(f, c[k * p], root_exp);
    trim(root);
    for (auto& [g, m] : squarefree_decomposition(f, monic(f, root))) out.emplace_back(std::move(g), m * static_cast<unsigned>(p));
  }
  return out;
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs (g_d, d)
/// where g_d is the product of all irreducible factors of degree d.
template <FiniteField F>
std::vector<std::pair<Poly<F>, unsigned>> distinct_degree_factorization(const F& f, Poly<F> a) {
  std::vector<std::pair<Poly<F>, unsigned>> out;
  const Poly<F> x = x_power(f, 1);
  Poly<F> h = mod(f, x, a);
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(degree(a)); ++d) {
    h = powmod(f, h, BigInt(f.size()), a);
    Poly<F> g = gcd(f, a, sub(f, h, x));
    if (g.size() > 1) {
      out.emplace_back(g, d);
      a = divmod(f, a, g).first;
      h = mod(f, h, a);
    }
  }
  if (a.size() > 1) out.emplace_back(monic(f, a), static_cast<unsigned>(degree(a)));
  return out;
}

/// Splits a monic squarefree polynomial whose irreducible factors all have degree d
/// (Cantor-Zassenhaus; odd characteristic).
template <FiniteField F>
std::vector<Poly<F>> equal_degree_factorization(const F& f, const Poly<F>& a, unsigned d, std::uint64_t seed = 1) {
  if (f.characteristic() == 2) throw std::invalid_argument("equal_degree_factorization: characteristic 2 unsupported");
  const auto n = static_cast<unsigned>(degree(a));
  if (n == d) return {a};
  std::mt19937_64 rng(seed);
  const BigInt exponent = (big_pow(BigInt(f.size()), d) - 1) / 2;
  while (true) {
    Poly<F> r(n);
    for (auto& c : r) c = f.element(rng() % f.size());
    trim(r);
    if (r.size() <= 1) continue;
    Poly<F> b = sub(f, powmod(f, r, exponent, a), Poly<F>{f.one()});
    Poly<F> g = gcd(f, a, b);
    if (g.size() > 1 && g.size() < a.size()) {
      auto left = equal_degree_factorization(f, g, d, rng());
      auto right = equal_degree_factorization(f, monic(f, divmod(f, a, g).first), d, rng());
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles with multiplicities.
template <FiniteField F>
std::vector<std::pair<Poly<F>, unsigned>> factor(const F& f, const Poly<F>& a, std::uint64_t seed = 1) {
  std::vector<std::pair<Poly<F>, unsigned>> out;
  for (auto& [sq, mult] : squarefree_decomposition(f, monic(f, a))) {
    for (auto& [g, d] : distinct_degree_factorization(f, sq)) {
      for (auto& h : equal_degree_factorization(f, g, d, seed++)) out.emplace_back(std::move(h), mult);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rabin's irreducibility test for a monic polynomial.
template <FiniteField F>
bool is_irreducible(const F& f, const Poly<F>& a) {
  const int n = degree(a);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly<F> x = x_power(f, 1);
  for (std::uint64_t r : numth::prime_divisors(static_cast<std::uint64_t>(n))) {
    Poly<F> h = powmod(f, x, big_pow(BigInt(f.size()), static_cast<std::uint64_t>(n) / r), a);
    if (gcd(f, a, sub(f, h, x)).size() > 1) return false;
  }
  return mod(f, sub(f, powmod(f, x, big_pow(BigInt(f.size()), static_cast<std::uint64_t>(n)), a), x), a).empty();
}

/// Number of distinct roots in an algebraic closure (degree of the squarefree radical).
template <FiniteField F>
unsigned distinct_root_count(const F& f, const Poly<F>& a) {
  unsigned total = 0;
  for (const auto& [g, m] : squarefree_decomposition(f, monic(f, a))) total += static_cast<unsigned>(degree(g));
  return total;
}

/// Degree of the smallest extension of the field over which a splits.
template <FiniteField F>
unsigned splitting_degree(const F& f, const Poly<F>& a) {
  std::uint64_t e = 1;
  for (const auto& [g, m] : squarefree_decomposition(f, monic(f, a)))
    for (const auto& [h, d] : distinct_degree_factorization(f, g)) e = lcm_u64(e, d);
  return static_cast<unsigned>(e);
}

}  // namespace fpoly

// ---------------------------------------------------------------------------
// Extension fields
// ---------------------------------------------------------------------------

/// F_{p^e} = F_p[y]/(modulus). Elements are encoded as integers sum c_i p^i.
class ExtensionField {
 public:
  using value_type = std::uint64_t;

  ExtensionField(std::uint64_t p, std::vector<std::uint64_t> modulus) : base_(p), modulus_(std::move(modulus)) {
    fpoly::trim(modulus_);
    if (modulus_.size() < 2 || modulus_.back() != 1) throw std::invalid_argument("ExtensionField: modulus must be monic of degree >= 1");
    for (auto c : modulus_)
      if (c >= p) throw std::invalid_argument("ExtensionField: modulus coefficients must be reduced");
    if (!fpoly::is_irreducible(base_, modulus_)) throw std::invalid_argument("ExtensionField: modulus is reducible");
    degree_ = static_cast<unsigned>(modulus_.size() - 1);
    BigInt q = big_pow(BigInt(p), degree_);
    if (q > (BigInt(1) << 40)) throw CapExceeded("ExtensionField: field size above 2^40");
    size_ = static_cast<std::uint64_t>(q);
  }

  /// The field of order p^e with the lexicographically first monic irreducible modulus.
  static ExtensionField with_degree(std::uint64_t p, unsigned e) {
    const PrimeField base(p);
    std::vector<std::uint64_t> cand(e + 1, 0);
    cand[e] = 1;
    while (true) {
      if (fpoly::is_irreducible(base, cand)) return ExtensionField(p, cand);
      std::size_t i = 0;
      while (i < e && ++cand[i] == p) cand[i++] = 0;
      if (i == e) throw std::logic_error("with_degree: no irreducible polynomial found");
    }
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const {
    value_type out = 0, place = 1;
    for (unsigned i = 0; i < degree_; ++i) {
      out += base_.add(a % p(), b % p()) * place;
      a /= p();
      b /= p();
      place *= p();
    }
    return out;
  }
  value_type neg(value_type a) const {
    value_type out = 0, place = 1;
    for (unsigned i = 0; i < degree_; ++i) {
      out += base_.neg(a % p()) * place;
      a /= p();
      place *= p();
    }
    return out;
  }
  value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }
  value_type mul(value_type a, value_type b) const {
    auto prod = fpoly::mul(base_, decode(a), decode(b));
    return encode(fpoly::mod(base_, prod, modulus_));
  }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("ExtensionField: inverse of zero");
    return fpoly::pow(*this, a, BigInt(size_ - 2));
  }
  value_type from_int(std::int64_t n) const { return base_.from_int(n); }
  std::uint64_t characteristic() const { return base_.characteristic(); }
  std::uint64_t size() const { return size_; }
  unsigned degree() const { return degree_; }
  value_type element(std::uint64_t index) const { return index; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  /// Embedding of the prime field.
  value_type embed(std::uint64_t c) const { return c % p(); }

  std::vector<std::uint64_t> decode(value_type a) const {
    std::vector<std::uint64_t> out(degree_);
    for (unsigned i = 0; i < degree_; ++i) {
      out[i] = a % p();
      a /= p();
    }
    fpoly::trim(out);
    return out;
  }
  value_type encode(const std::vector<std::uint64_t>& c) const {
    value_type out = 0;
    for (std::size_t i = c.size(); i-- > 0;) out = out * p() + c[i];
    return out;
  }

  bool operator==(const ExtensionField& o) const { return characteristic() == o.characteristic() && modulus_ == o.modulus_; }

 private:
  std::uint64_t p() const { return base_.characteristic(); }

  PrimeField base_;
  std::vector<std::uint64_t> modulus_;
  unsigned degree_ = 1;
  std::uint64_t size_ = 0;
};

static_assert(FiniteField<PrimeField>);
static_assert(FiniteField<ExtensionField>);

}  // namespace fitlab

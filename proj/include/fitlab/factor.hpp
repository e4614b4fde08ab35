#pragma once

// Factorization over the integers: squarefree part, factorization modulo a good
// prime, Hensel lifting, and exhaustive recombination of the lifted factors.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fitlab/common.hpp"
#include "fitlab/field.hpp"
#include "fitlab/intpoly.hpp"
#include "fitlab/numth.hpp"

namespace fitlab {

struct Factorization {
  int sign = 1;
  BigInt content = 1;
  /// Irreducible primitive factors with positive leading coefficient, and multiplicities.
  std::vector<std::pair<IntPoly, unsigned>> factors;

  std::size_t irr_count() const { return factors.size(); }

  IntPoly reconstruct() const {
    IntPoly out = IntPoly::constant(BigInt(sign) * content);
    for (const auto& [g, m] : factors)
      for (unsigned i = 0; i < m; ++i) out = out * g;
    return out;
  }
};

namespace detail {

inline BigInt big_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt big_invmod(const BigInt& a, const BigInt& m) {
  BigInt t = 0, new_t = 1, r = m, new_r = big_mod(a, m);
  while (new_r != 0) {
    BigInt q = r / new_r;
    BigInt tmp = t - q * new_t;
    t = std::move(new_t);
    new_t = std::move(tmp);
    tmp = r - q * new_r;
    r = std::move(new_r);
    new_r = std::move(tmp);
  }
  if (r != 1) throw std::domain_error("big_invmod: not invertible");
  return big_mod(t, m);
}

inline IntPoly reduce_symmetric(const IntPoly& f, const BigInt& m) {
  std::vector<BigInt> c = f.coeffs();
  const BigInt half = m / 2;
  for (auto& v : c) {
    v = big_mod(v, m);
    if (v > half) v -= m;
  }
  return IntPoly(std::move(c));
}

inline IntPoly reduce_nonnegative(const IntPoly& f, const BigInt& m) {
  std::vector<BigInt> c = f.coeffs();
  for (auto& v : c) v = big_mod(v, m);
  return IntPoly(std::move(c));
}

inline IntPoly lift(const std::vector<std::uint64_t>& c) { return IntPoly(std::vector<BigInt>(c.begin(), c.end())); }

inline std::vector<std::uint64_t> reduce_to_fp(const IntPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> c;
  for (const auto& v : f.coeffs()) c.push_back(big_mod_u64(v, p));
  fpoly::trim(c);
  return c;
}

// s, t with s*g + t*h = 1 over F_p (g, h coprime).
inline std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> bezout(const PrimeField& F, const std::vector<std::uint64_t>& g,
                                                                                 const std::vector<std::uint64_t>& h) {
  using P = std::vector<std::uint64_t>;
  P r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = fpoly::divmod(F, r0, r1);
    P s2 = fpoly::sub(F, s0, fpoly::mul(F, q, s1));
    P t2 = fpoly::sub(F, t0, fpoly::mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw std::logic_error("bezout: factors not coprime");
  const auto inv = F.inv(r0[0]);
  return {fpoly::scale(F, s0, inv), fpoly::scale(F, t0, inv)};
}

// Lifts F = g*h (mod p), g monic and lc(h) = lc(F) mod p, to F = G*H (mod p^k).
inline std::pair<IntPoly, IntPoly> hensel_pair(const IntPoly& target, const std::vector<std::uint64_t>& g, const std::vector<std::uint64_t>& h,
                                               std::uint64_t p, unsigned k) {
  const PrimeField F(p);
  const BigInt pk = big_pow(BigInt(p), k);
  auto [s, t] = bezout(F, g, h);
  IntPoly G = lift(g);
  std::vector<BigInt> hc = lift(h).coeffs();
  hc.back() = big_mod(target.leading(), pk);
  IntPoly H(std::move(hc));
  BigInt pj = p;
  for (unsigned j = 1; j < k; ++j) {
    IntPoly diff = target - G * H;
    std::vector<BigInt> ec = diff.coeffs();
    for (auto& v : ec) {
      if (v % pj != 0) throw std::logic_error("hensel_pair: lifting invariant broken");
      v /= pj;
    }
    const auto e = reduce_to_fp(IntPoly(std::move(ec)), p);
    auto [q, dg] = fpoly::divmod(F, fpoly::mul(F, t, e), g);
    auto dh = fpoly::add(F, fpoly::mul(F, s, e), fpoly::mul(F, q, h));
    if (fpoly::degree(dh) >= fpoly::degree(h)) throw std::logic_error("hensel_pair: correction degree too large");
    G += pj * lift(dg);
    H += pj * lift(dh);
    pj *= p;
  }
  return {reduce_nonnegative(G, pk), reduce_nonnegative(H, pk)};
}

// Monic lifts G_i with f = lc(f) * prod G_i (mod p^k).
inline std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<std::vector<std::uint64_t>>& factors, std::uint64_t p,
                                        unsigned k) {
  const PrimeField F(p);
  const BigInt pk = big_pow(BigInt(p), k);
  std::vector<IntPoly> out;
  IntPoly current = reduce_nonnegative(f, pk);
  const std::uint64_t lc_mod_p = big_mod_u64(f.leading(), p);
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    std::vector<std::uint64_t> h{lc_mod_p};
    for (std::size_t j = i + 1; j < factors.size(); ++j) h = fpoly::mul(F, h, factors[j]);
    auto [G, H] = hensel_pair(current, factors[i], h, p, k);
    out.push_back(std::move(G));
    current = std::move(H);
  }
  const BigInt inv = big_invmod(current.leading(), pk);
  out.push_back(reduce_nonnegative(inv * current, pk));
  return out;
}

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Irreducible factors of a primitive squarefree f with positive leading coefficient.
inline std::vector<IntPoly> factor_squarefree(const IntPoly& f) {
  if (f.degree() <= 1) return {f};
  // choose among a few good primes the one giving the fewest modular factors
  std::optional<std::uint64_t> best_p;
  std::vector<std::vector<std::uint64_t>> best;
  int good = 0;
  for (std::uint64_t p = 3; good < 5; p += 2) {
    if (!numth::is_prime(p) || big_mod_u64(f.leading(), p) == 0) continue;
    const PrimeField F(p);
    const auto fp = reduce_to_fp(f, p);
    if (fpoly::gcd(F, fp, fpoly::derivative(F, fp)).size() != 1) continue;
    ++good;
    std::vector<std::vector<std::uint64_t>> mods;
    for (auto& [g, m] : fpoly::factor(F, fp, p)) mods.push_back(std::move(g));
    if (!best_p || mods.size() < best.size()) {
      best_p = p;
      best = std::move(mods);
    }
    if (best.size() == 1) return {f};
  }
  const std::uint64_t p = *best_p;

  // coefficient bound for lc(f) * (any factor), symmetric range needs p^k > 2 * bound
  BigInt norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  const BigInt bound = big_abs(f.leading()) * (BigInt(1) << f.degree()) * (boost::multiprecision::sqrt(norm2) + 1);
  unsigned k = 1;
  BigInt pk = p;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }
  std::vector<IntPoly> lifted = hensel_lift(f, best, p, k);

  std::vector<IntPoly> out;
  IntPoly rest = f;
  std::vector<std::size_t> remaining(lifted.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      IntPoly cand = IntPoly::constant(rest.leading());
      for (std::size_t i : idx) cand = reduce_nonnegative(cand * lifted[remaining[i]], pk);
      cand = reduce_symmetric(cand, pk);
      if (cand.degree() < 1) continue;
      cand = primitive_positive(cand);
      if (auto q = divide_exact(rest, cand)) {
        out.push_back(cand);
        rest = std::move(*q);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(remaining[i]);
        remaining = std::move(keep);
        found = true;
        break;
      }
    } while (next_combination(idx, remaining.size()));
    if (!found) ++s;
  }
  if (rest.degree() >= 1) out.push_back(primitive_positive(rest));
  return out;
}

}  // namespace detail

/// Complete factorization over the integers.
inline Factorization factor_z(const IntPoly& f) {
  if (f.is_zero()) throw std::domain_error("factor_z: zero polynomial");
  Factorization out;
  out.sign = f.leading() < 0 ? -1 : 1;
  auto [a, g] = content_and_primitive(f);
  out.content = a;
  if (out.sign < 0) g = -g;
  if (g.degree() == 0) return out;
  const IntPoly sqf = *divide_exact(g, gcd_z(g, g.derivative()));
  IntPoly rest = g;
  for (IntPoly& q : detail::factor_squarefree(sqf)) {
    unsigned mult = 0;
    while (auto next = divide_exact(rest, q)) {
      rest = std::move(*next);
      ++mult;
    }
    if (mult == 0) throw std::logic_error("factor_z: factor does not divide input");
    out.factors.emplace_back(std::move(q), mult);
  }
  if (rest != IntPoly{1}) throw std::logic_error("factor_z: incomplete factorization");
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
  return out;
}

inline std::size_t irr_count(const IntPoly& f) { return factor_z(f).irr_count(); }

}  // namespace fitlab

#pragma once

// Forbidden prime set sigma(f): the prime divisors of m! * a * rho, where
// m = (2d)^(2d), a = content(f), u = x^(m!) - 1, v = gcd(f, u) and
// rho = Res(f/v, u/v). Membership is decided without ever forming rho.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fitlab/common.hpp"
#include "fitlab/intpoly.hpp"
#include "fitlab/numth.hpp"

namespace fitlab {

inline constexpr unsigned kSigmaMaxDegree = 4;

/// (2d)^(2d) for 1 <= d <= 4.
inline std::uint64_t sigma_stage_count(unsigned d) {
  if (d == 0) throw std::invalid_argument("sigma: constant polynomials are not supported");
  if (d > kSigmaMaxDegree) throw CapExceeded("sigma: degree " + std::to_string(d) + " above the supported cap 4");
  std::uint64_t m = 1;
  for (unsigned i = 0; i < 2 * d; ++i) m *= 2 * d;
  return m;
}

struct SigmaContext {
  IntPoly f;
  unsigned d = 0;
  BigInt a;
  std::uint64_t m = 0;
  std::vector<std::uint64_t> cyclo_indices;
  IntPoly v;  // product of Phi_n over cyclo_indices
  IntPoly g;  // f / v
};

inline SigmaContext build_context(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("sigma: zero polynomial");
  if (f.degree() < 1) throw std::invalid_argument("sigma: constant polynomials are not supported");
  SigmaContext ctx;
  ctx.f = f;
  ctx.d = static_cast<unsigned>(f.degree());
  ctx.m = sigma_stage_count(ctx.d);
  ctx.a = content(f);
  // every Phi_n | f has phi(n) <= d, so n <= 2d^2 <= m and Phi_n | x^(m!) - 1
  ctx.cyclo_indices = cyclotomic_divisors(f);
  ctx.v = IntPoly{1};
  for (auto n : ctx.cyclo_indices) ctx.v = ctx.v * cyclotomic(n);
  auto q = divide_exact(f, ctx.v);
  if (!q) throw std::logic_error("sigma: f / v is not exact");
  ctx.g = std::move(*q);
  if (ctx.d == 1 && gcd_z(f, IntPoly::x_pow_minus_one(24)) != ctx.v)
    throw std::logic_error("sigma: v disagrees with gcd(f, x^24 - 1)");
  return ctx;
}

enum class SigmaReason { factorial, content, resultant };

inline const char* to_string(SigmaReason r) {
  switch (r) {
    case SigmaReason::factorial: return "factorial";
    case SigmaReason::content: return "content";
    case SigmaReason::resultant: return "resultant";
  }
  return "?";
}

struct SigmaVerdict {
  bool member = false;
  /// Stage that decided the verdict; non-members are always decided by the resultant stage.
  SigmaReason reason = SigmaReason::resultant;
};

inline SigmaVerdict sigma_decide(const SigmaContext& ctx, std::uint64_t p) {
  if (!numth::is_prime(p)) throw std::invalid_argument("sigma: " + std::to_string(p) + " is not prime");
  if (p <= ctx.m) return {true, SigmaReason::factorial};
  if (big_mod_u64(ctx.a, p) == 0) return {true, SigmaReason::content};
  // p | rho iff g mod p shares a root with (x^(m!) - 1) / v mod p; x^(m!) - 1 is
  // squarefree mod p because p does not divide m!
  const ModPoly gbar = ModPoly::reduce(ctx.g, p);
  if (gbar.degree() < 1) return {false, SigmaReason::resultant};
  const ModPoly w = powmod_factorial(gbar, ctx.m);
  ModPoly c = mod_gcd(gbar, w - ModPoly(p, {1}));
  const ModPoly vbar = ModPoly::reduce(ctx.v, p);
  while (c.degree() > 0) {
    const ModPoly common = mod_gcd(c, vbar);
    if (common.degree() < 1) break;
    c = c / common;
  }
  return {c.degree() > 0, SigmaReason::resultant};
}

inline bool sigma_contains(const SigmaContext& ctx, std::uint64_t p) { return sigma_decide(ctx, p).member; }

/// Members of sigma(f) up to B. A truncation: large prime divisors of rho lie beyond any fixed B.
inline std::vector<std::uint64_t> sigma_enumerate(const SigmaContext& ctx, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (auto p : numth::primes_up_to(bound))
    if (sigma_contains(ctx, p)) out.push_back(p);
  return out;
}

struct ResultantLemmaVerdict {
  bool odd_and_large = false;      // p odd and p > m
  bool nonvanishing = false;       // f mod p != 0
  bool coprime_indices = false;    // gcd(p, n_1 ... n_c) = 1 and c <= irr(f)
  bool ideal_witness = false;      // gcd(f mod p, x^(m!) - 1 mod p) divides v mod p

  bool holds() const { return odd_and_large && nonvanishing && coprime_indices && ideal_witness; }
};

/// Checks the four consequences above for a prime outside sigma(f). `irr` is irr(f).
inline ResultantLemmaVerdict check_resultant_lemma(const SigmaContext& ctx, std::uint64_t p, std::size_t irr) {
  if (sigma_contains(ctx, p)) throw std::invalid_argument("check_resultant_lemma: p lies in sigma(f)");
  ResultantLemmaVerdict out;
  out.odd_and_large = p % 2 == 1 && p > ctx.m;
  const ModPoly fbar = ModPoly::reduce(ctx.f, p);
  out.nonvanishing = !fbar.is_zero();
  bool coprime = ctx.cyclo_indices.size() <= irr;
  for (auto n : ctx.cyclo_indices) coprime = coprime && n % p != 0;
  out.coprime_indices = coprime;
  if (out.nonvanishing) {
    const ModPoly vbar = ModPoly::reduce(ctx.v, p);
    if (fbar.degree() < 1) {
      out.ideal_witness = true;
    } else {
      const ModPoly w = powmod_factorial(fbar, ctx.m);
      const ModPoly c = mod_gcd(fbar, w - ModPoly(p, {1}));
      out.ideal_witness = (vbar % c).is_zero();
    }
  }
  return out;
}

}  // namespace fitlab

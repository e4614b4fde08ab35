#pragma once

// Ordered and elementary abelian identities of an automorphism, characteristic
// elementary abelian sections and the matrices induced on them.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fitlab/automorphism.hpp"
#include "fitlab/group.hpp"
#include "fitlab/intpoly.hpp"
#include "fitlab/lattice.hpp"
#include "fitlab/matrix.hpp"

namespace fitlab {

enum class SectionMode { canonical, exhaustive };

inline const char* to_string(SectionMode m) { return m == SectionMode::canonical ? "canonical" : "exhaustive"; }

inline SectionMode parse_section_mode(const std::string& s) {
  if (s == "canonical") return SectionMode::canonical;
  if (s == "exhaustive") return SectionMode::exhaustive;
  throw std::invalid_argument("unknown section mode '" + s + "'");
}

// ---------------------------------------------------------------------------
// Ordered identities

struct OrderedVerdict {
  bool holds = true;
  std::optional<std::uint32_t> witness;  // first g with a nontrivial product
};

/// g^a0 (g^phi)^a1 ... (g^(phi^d))^ad = 1 for every g, multiplied left to right.
inline OrderedVerdict ordered_identity_holds(const FiniteGroup& G, const Automorphism& phi, const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("ordered_identity_holds: f must be nonzero");
  OrderedVerdict out;
  for (std::uint32_t g = 0; g < G.order(); ++g) {
    const std::uint64_t n = G.order_of(g);
    std::uint32_t acc = 0, cur = g;
    for (int i = 0; i <= f.degree(); ++i) {
      BigInt e = f.coeff(static_cast<std::size_t>(i)) % n;
      if (e < 0) e += n;
      acc = G.mul(acc, G.pow(cur, static_cast<std::int64_t>(e)));
      cur = phi(cur);
    }
    if (acc != 0) {
      out.holds = false;
      out.witness = g;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sections

struct Section {
  Subgroup A, B;
  std::uint64_t p = 0;
  std::vector<std::uint32_t> basis;  // coset representatives in A
  SectionMode provenance = SectionMode::canonical;
  std::vector<std::uint32_t> code;   // element of A -> sum c_i p^i of its coordinates; UINT32_MAX outside A

  std::size_t dim() const { return basis.size(); }

  std::vector<std::uint64_t> coordinates(std::uint32_t g) const {
    if (code[g] == UINT32_MAX) throw std::logic_error("section: element outside A");
    std::vector<std::uint64_t> c(basis.size());
    std::uint64_t x = code[g];
    for (auto& v : c) {
      v = x % p;
      x /= p;
    }
    return c;
  }
};

/// Builds the section A/B when B is normal in A and A/B is elementary abelian of rank >= 1.
inline std::optional<Section> make_section(const FiniteGroup& G, const Subgroup& A, const Subgroup& B,
                                           SectionMode mode) {
  if (!B.subset_of(A) || A == B) return std::nullopt;
  const std::uint64_t index = A.order() / B.order();
  const auto primes = numth::prime_divisors(index);
  if (primes.size() != 1) return std::nullopt;
  const std::uint64_t p = primes[0];
  if (!is_normal_in(G, B, A)) return std::nullopt;
  const auto ga = small_generators(G, A);
  for (auto a : ga) {
    if (!B.contains(G.pow(a, static_cast<std::int64_t>(p)))) return std::nullopt;
    for (auto b : ga)
      if (!B.contains(G.commutator(a, b))) return std::nullopt;
  }
  Section s;
  s.A = A;
  s.B = B;
  s.p = p;
  s.provenance = mode;
  auto span_gens = small_generators(G, B);
  Subgroup span = B;
  for (auto a : A.elements()) {
    if (span.order() == A.order()) break;
    if (span.contains(a)) continue;
    s.basis.push_back(a);
    span_gens.push_back(a);
    span = closure(G, span_gens);
  }
  s.code.assign(G.order(), UINT32_MAX);
  const auto bel = B.elements();
  const std::size_t k = s.basis.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= p;
  if (total != index) throw std::logic_error("section: basis does not span");
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint32_t x = 0;
    std::uint64_t rest = c;
    for (std::size_t i = 0; i < k; ++i) {
      x = G.mul(x, G.pow(s.basis[i], static_cast<std::int64_t>(rest % p)));
      rest /= p;
    }
    for (auto b : bel) s.code[G.mul(b, x)] = static_cast<std::uint32_t>(c);
  }
  return s;
}

namespace detail {

// <a^p : a in A>
inline Subgroup agemo(const FiniteGroup& G, const Subgroup& A, std::uint64_t p) {
  std::vector<std::uint32_t> gens;
  for (auto a : A.elements()) gens.push_back(G.pow(a, static_cast<std::int64_t>(p)));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return closure(G, gens);
}

// <a in A : a^p = 1>
inline Subgroup omega(const FiniteGroup& G, const Subgroup& A, std::uint64_t p) {
  std::vector<std::uint32_t> gens;
  for (auto a : A.elements())
    if (G.pow(a, static_cast<std::int64_t>(p)) == 0) gens.push_back(a);
  return closure(G, gens);
}

inline Subgroup socle(const FiniteGroup& G) {
  std::vector<Subgroup> closures;
  Subgroup covered = G.trivial();
  for (std::uint32_t x = 1; x < G.order(); ++x) {
    Subgroup N = normal_closure(G, G.whole(), {x});
    if (std::find(closures.begin(), closures.end(), N) == closures.end()) closures.push_back(std::move(N));
  }
  Subgroup soc = G.trivial();
  for (const auto& N : closures) {
    bool minimal = true;
    for (const auto& M : closures)
      if (M.order() < N.order() && M.subset_of(N)) {
        minimal = false;
        break;
      }
    if (minimal) soc = join(G, soc, N);
  }
  return soc;
}

}  // namespace detail

inline constexpr std::size_t kCanonicalFamilyCap = 2000;

/// Characteristic subgroups built from canonical constructions, closed under
/// intersection, join, derived subgroup, agemo and omega.
inline std::vector<Subgroup> canonical_family(const FiniteGroup& G) {
  std::set<Subgroup> family;
  std::vector<Subgroup> work;
  auto add = [&](const Subgroup& H) {
    if (family.insert(H).second) {
      if (family.size() > kCanonicalFamilyCap) throw CapExceeded("canonical_family: too many members");
      work.push_back(H);
    }
  };
  add(G.trivial());
  add(G.whole());
  for (const auto& s : derived_series(G)) add(s);
  for (const auto& s : lower_central_series(G, G.whole())) add(s);
  if (is_soluble(G))
    for (const auto& s : fitting_height(G).chain.terms) add(s);
  const auto primes = numth::prime_divisors(G.order());
  for (auto p : primes) {
    add(o_p(G, p));
    add(o_qprime(G, p));
  }
  add(fitting_subgroup(G));
  add(centre(G));
  add(detail::socle(G));
  add(frattini(G));
  while (!work.empty()) {
    const Subgroup A = work.back();
    work.pop_back();
    add(derived_subgroup(G, A));
    for (auto p : numth::prime_divisors(A.order())) {
      add(detail::agemo(G, A, p));
      add(detail::omega(G, A, p));
    }
    const std::vector<Subgroup> snapshot(family.begin(), family.end());
    for (const auto& B : snapshot) {
      add(A & B);
      add(join(G, A, B));
    }
  }
  return {family.begin(), family.end()};
}

/// Subgroups invariant under every automorphism, from the full lattice.
inline std::vector<Subgroup> characteristic_subgroups(const FiniteGroup& G, const std::vector<Automorphism>& auts) {
  std::vector<Subgroup> out;
  for (const auto& H : subgroup_lattice(G).subgroups) {
    bool ok = is_normal(G, H);
    for (std::size_t i = 0; ok && i < auts.size(); ++i) ok = is_invariant(auts[i], H);
    if (ok) out.push_back(H);
  }
  return out;
}

inline std::vector<Section> sections_from(const FiniteGroup& G, const std::vector<Subgroup>& family, SectionMode mode) {
  std::vector<Section> out;
  for (const auto& A : family)
    for (const auto& B : family)
      if (auto s = make_section(G, A, B, mode)) out.push_back(std::move(*s));
  return out;
}

/// Characteristic elementary abelian sections. Exhaustive mode needs Aut(G) within its caps.
inline std::vector<Section> characteristic_sections(const FiniteGroup& G, SectionMode mode) {
  if (mode == SectionMode::canonical) return sections_from(G, canonical_family(G), mode);
  return sections_from(G, characteristic_subgroups(G, automorphism_group(G)), mode);
}

// ---------------------------------------------------------------------------
// Induced matrices and the elementary abelian check

/// Column j holds the coordinates of (basis_j)^phi modulo B.
inline MatrixFp induced_matrix(const FiniteGroup& G, const Section& s, const Automorphism& phi) {
  (void)G;
  const PrimeField F(s.p);
  const std::size_t k = s.dim();
  MatrixFp M(F, k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto img = phi(s.basis[j]);
    if (s.code[img] == UINT32_MAX) throw std::logic_error("induced_matrix: image leaves the section");
    const auto c = s.coordinates(img);
    for (std::size_t i = 0; i < k; ++i) M(i, j) = c[i];
  }
  return M;
}

inline ModPoly min_poly_on_section(const FiniteGroup& G, const Section& s, const Automorphism& phi) {
  const MatrixFp M = induced_matrix(G, s, phi);
  return ModPoly(M.field(), min_poly_of(M));
}

enum class SectionResult { pass, fail, vacuous };

inline const char* to_string(SectionResult r) {
  switch (r) {
    case SectionResult::pass: return "PASS";
    case SectionResult::fail: return "FAIL";
    case SectionResult::vacuous: return "VACUOUS";
  }
  return "?";
}

struct SectionCheck {
  std::uint64_t p = 0;
  std::size_t dim = 0;
  SectionResult result = SectionResult::pass;
};

struct EaVerdict {
  bool holds = true;
  std::vector<SectionCheck> sections;
  std::vector<std::uint64_t> vanishing_primes;  // primes of sections where f = 0 mod p

  bool nonvanishing() const { return vanishing_primes.empty(); }
};

/// f(M) = 0 over F_p on every section; sections where f vanishes mod p pass and are flagged.
inline EaVerdict ea_identity_holds(const FiniteGroup& G, const Automorphism& phi, const IntPoly& f,
                                   const std::vector<Section>& sections) {
  EaVerdict out;
  for (const auto& s : sections) {
    SectionCheck c{s.p, s.dim(), SectionResult::pass};
    const ModPoly fb = ModPoly::reduce(f, s.p);
    if (fb.is_zero()) {
      c.result = SectionResult::vacuous;
      if (std::find(out.vanishing_primes.begin(), out.vanishing_primes.end(), s.p) == out.vanishing_primes.end())
        out.vanishing_primes.push_back(s.p);
    } else if (!eval_at_matrix(fb.coeffs(), induced_matrix(G, s, phi)).is_zero()) {
      c.result = SectionResult::fail;
      out.holds = false;
    }
    out.sections.push_back(c);
  }
  std::sort(out.vanishing_primes.begin(), out.vanishing_primes.end());
  return out;
}

inline EaVerdict ea_identity_holds(const FiniteGroup& G, const Automorphism& phi, const IntPoly& f, SectionMode mode) {
  return ea_identity_holds(G, phi, f, characteristic_sections(G, mode));
}

// ---------------------------------------------------------------------------
// Synthesis

struct SynthesizedIdentity {
  IntPoly poly;
  bool refined = false;
};

/// Baseline x^|phi| - 1; refined CRT lift of per-prime lcms of section minimal
/// polynomials when they share a degree below |phi|. Re-verified before return.
inline SynthesizedIdentity synthesize_identity(const FiniteGroup& G, const Automorphism& phi,
                                               const std::vector<Section>& sections) {
  const std::uint64_t n = phi.order();
  SynthesizedIdentity out{IntPoly::x_pow_minus_one(n), false};
  std::vector<std::pair<std::uint64_t, ModPoly>> lcms;
  for (const auto& s : sections) {
    const ModPoly mp = min_poly_on_section(G, s, phi);
    auto it = std::find_if(lcms.begin(), lcms.end(), [&](const auto& e) { return e.first == s.p; });
    if (it == lcms.end()) {
      lcms.push_back({s.p, mp});
    } else {
      const ModPoly g = mod_gcd(it->second, mp);
      it->second = (it->second * mp / g).monic();
    }
  }
  if (lcms.empty()) {
    // no sections: x - 1 annihilates vacuously and so does the baseline
    if (n > 1) out = {IntPoly{-1, 1}, true};
    return out;
  }
  const int e = lcms[0].second.degree();
  for (const auto& [p, l] : lcms)
    if (l.degree() != e) return out;
  if (static_cast<std::uint64_t>(e) >= n) return out;
  BigInt modulus = 1;
  std::vector<BigInt> coeffs(static_cast<std::size_t>(e) + 1, 0);
  for (const auto& [p, l] : lcms) {
    // combine x = c (mod modulus) with x = l_i (mod p)
    const BigInt inv = BigInt(invmod(big_mod_u64(modulus, p), p));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const BigInt target = BigInt(l.coeffs()[i]);
      BigInt t = ((target - coeffs[i]) % p + p) % p;
      t = t * inv % p;
      coeffs[i] += modulus * t;
    }
    modulus *= p;
  }
  for (auto& c : coeffs)
    if (2 * c > modulus) c -= modulus;
  IntPoly refined(coeffs);
  if (!ea_identity_holds(G, phi, refined, sections).holds)
    throw std::logic_error("synthesize_identity: refined polynomial failed re-verification");
  out.poly = std::move(refined);
  out.refined = true;
  return out;
}

// ---------------------------------------------------------------------------
// Ideal property

struct IdealVerdict {
  bool sum_holds = false;      // f + g
  bool product_holds = false;  // f * h
  bool holds() const { return sum_holds && product_holds; }
};

inline IdealVerdict ideal_property_check(const FiniteGroup& G, const Automorphism& phi, const IntPoly& f,
                                         const IntPoly& g, const IntPoly& h, const std::vector<Section>& sections) {
  if (!ea_identity_holds(G, phi, f, sections).holds || !ea_identity_holds(G, phi, g, sections).holds)
    throw std::invalid_argument("ideal_property_check: f and g must be identities");
  IdealVerdict v;
  v.sum_holds = ea_identity_holds(G, phi, f + g, sections).holds;
  v.product_holds = ea_identity_holds(G, phi, f * h, sections).holds;
  return v;
}

}  // namespace fitlab

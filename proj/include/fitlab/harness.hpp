#pragma once

// Corpus of (group, automorphism) pairs and end-to-end checks of the Fitting
// height bounds, emitted as a deterministic line-based report.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fitlab/automorphism.hpp"
#include "fitlab/builtins.hpp"
#include "fitlab/factor.hpp"
#include "fitlab/group.hpp"
#include "fitlab/identities.hpp"
#include "fitlab/sigma.hpp"

namespace fitlab {

enum class Profile { smoke, standard, extended };

inline Profile parse_profile(const std::string& s) {
  if (s == "smoke") return Profile::smoke;
  if (s == "standard") return Profile::standard;
  if (s == "extended") return Profile::extended;
  throw std::invalid_argument("unknown profile '" + s + "' (expected smoke, standard or extended)");
}

inline const char* to_string(Profile p) {
  switch (p) {
    case Profile::smoke: return "smoke";
    case Profile::standard: return "standard";
    case Profile::extended: return "extended";
  }
  return "?";
}

struct CorpusEntry {
  std::string id;
  std::string family;  // inversion | power | semidirect | product | scan
  GroupSpec spec;
  std::vector<Perm> auto_images;  // image of each generator of spec
  std::size_t group_order = 0;
  std::uint64_t aut_order = 0;
  bool fpf = false;
  bool coprime = false;
  bool soluble = false;
  std::optional<std::size_t> height;

  FiniteGroup group() const { return spec.build(); }
  Automorphism automorphism(const FiniteGroup& G) const { return Automorphism::from_perm_images(G, auto_images); }
};

namespace detail {

inline CorpusEntry make_entry(std::string family, std::string name, const GroupSpec& spec, const FiniteGroup& G,
                              const Automorphism& phi) {
  CorpusEntry e;
  e.family = std::move(family);
  e.id = std::move(name);
  e.spec = spec;
  for (auto g : G.generator_indices()) e.auto_images.push_back(G.element(phi(g)));
  e.group_order = G.order();
  e.aut_order = phi.order();
  e.fpf = is_fpf(G, phi);
  e.coprime = gcd_u64(e.aut_order, e.group_order) == 1;
  e.soluble = is_soluble(G);
  if (e.soluble) e.height = fitting_height(G).height;
  return e;
}

inline Automorphism inversion_of(const FiniteGroup& G) {
  std::vector<std::uint32_t> images;
  for (auto g : G.generator_indices()) images.push_back(G.inv(g));
  return Automorphism::from_generator_images(G, images);
}

/// Product automorphism on direct_product(a, b) from automorphisms of the factors.
inline Automorphism product_automorphism(const GroupSpec& a, const FiniteGroup& A, const Automorphism& pa,
                                         const GroupSpec& b, const FiniteGroup& B, const Automorphism& pb,
                                         const FiniteGroup& G) {
  const std::size_t n = a.degree + b.degree;
  std::vector<Perm> images;
  for (auto g : A.generator_indices()) {
    Perm p = perm_identity(n);
    const Perm& x = A.element(pa(g));
    for (std::size_t i = 0; i < a.degree; ++i) p[i] = x[i];
    images.push_back(p);
  }
  for (auto g : B.generator_indices()) {
    Perm p = perm_identity(n);
    const Perm& x = B.element(pb(g));
    for (std::size_t i = 0; i < b.degree; ++i) p[a.degree + i] = static_cast<std::uint32_t>(a.degree + x[i]);
    images.push_back(p);
  }
  return Automorphism::from_perm_images(G, images);
}

/// Seeded choice of k items out of n, returned in increasing order.
inline std::vector<std::size_t> seeded_sample(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng() % i]);
  if (idx.size() > k) idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline std::uint64_t tag_hash(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

/// Builtin corpus. The seed selects which fixed-point-free automorphisms the
/// exhaustive scan keeps for each scanned group.
inline std::vector<CorpusEntry> corpus_generate(Profile profile, std::uint64_t seed = 0) {
  std::vector<CorpusEntry> out;
  auto add = [&](CorpusEntry e) {
    std::ostringstream id;
    id << 'e' << std::setw(3) << std::setfill('0') << out.size() << '.' << e.id;
    e.id = id.str();
    out.push_back(std::move(e));
  };
  const bool smoke = profile == Profile::smoke;
  const bool extended = profile == Profile::extended;

  // (i) odd abelian groups with inversion
  std::vector<std::vector<std::size_t>> inversions =
      smoke ? std::vector<std::vector<std::size_t>>{{15}, {5}, {3, 3}, {7}}
            : std::vector<std::vector<std::size_t>>{{3},  {5},     {7},     {9},      {11},     {13},
                                                    {15}, {21},    {25},    {35},     {3, 3},   {5, 5},
                                                    {3, 3, 3}, {7, 7}, {3, 15}, {45}};
  if (extended)
    for (const auto& v : std::vector<std::vector<std::size_t>>{{105}, {11, 11}, {5, 5, 5}, {3, 5, 7}, {13, 13}})
      inversions.push_back(v);
  for (const auto& orders : inversions) {
    const GroupSpec s = abelian_group(orders);
    const FiniteGroup G = s.build();
    std::string name = "inversion.C";
    for (std::size_t i = 0; i < orders.size(); ++i) name += (i ? "xC" : "") + std::to_string(orders[i]);
    add(detail::make_entry("inversion", name, s, G, detail::inversion_of(G)));
  }

  // (ii) power maps on cyclic groups of prime order, including the identity map
  std::vector<std::pair<std::size_t, std::int64_t>> powers =
      smoke ? std::vector<std::pair<std::size_t, std::int64_t>>{{7, 3}, {11, 2}, {7, 1}, {5, 2}}
            : std::vector<std::pair<std::size_t, std::int64_t>>{{5, 2},  {5, 4},  {7, 1},  {7, 2},  {7, 3},
                                                                {7, 6},  {11, 2}, {11, 3}, {13, 2}, {13, 5},
                                                                {13, 12}, {17, 3}};
  if (extended)
    for (auto pk : std::vector<std::pair<std::size_t, std::int64_t>>{{19, 2}, {23, 5}, {29, 2}, {31, 3}})
      powers.push_back(pk);
  for (auto [q, k] : powers) {
    const GroupSpec s = cyclic_group(q);
    const FiniteGroup G = s.build();
    add(detail::make_entry("power", "power.C" + std::to_string(q) + ".k" + std::to_string(k), s, G,
                           power_automorphism(G, k)));
  }

  // (iii) C_q x| C_r with an automorphism found by search: a fixed-point-free one
  // when it exists, otherwise the first automorphism of order 2
  std::vector<std::pair<std::uint64_t, std::uint64_t>> semis =
      smoke ? std::vector<std::pair<std::uint64_t, std::uint64_t>>{{7, 3}}
            : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{7, 3}, {13, 4}, {11, 5}};
  for (auto [q, r] : semis) {
    const GroupSpec s = semidirect_cyclic(q, r);
    const FiniteGroup G = s.build();
    const auto auts = automorphism_group(G);
    std::optional<Automorphism> pick;
    for (const auto& a : auts)
      if (is_fpf(G, a)) {
        pick = a;
        break;
      }
    if (!pick)
      for (const auto& a : auts)
        if (a.order() == 2) {
          pick = a;
          break;
        }
    if (pick)
      add(detail::make_entry("semidirect", "semidirect.C" + std::to_string(q) + "xC" + std::to_string(r), s, G, *pick));
  }

  // (iv) direct products of the above
  struct Factor {
    GroupSpec spec;
    std::string name;
    std::function<Automorphism(const FiniteGroup&)> aut;
  };
  auto pw = [](std::int64_t k) { return [k](const FiniteGroup& G) { return power_automorphism(G, k); }; };
  auto klein_order3 = [](const FiniteGroup& G) {
    const auto& g = G.generator_indices();
    return Automorphism::from_generator_images(G, {g[1], G.mul(g[0], g[1])});
  };
  std::vector<std::pair<Factor, Factor>> products;
  if (!smoke) {
    products = {{{cyclic_group(5), "C5.k2", pw(2)}, {cyclic_group(7), "C7.k3", pw(3)}},
                {{cyclic_group(3), "C3.inv", detail::inversion_of}, {cyclic_group(5), "C5.k2", pw(2)}},
                {{abelian_group({2, 2}), "C2xC2.w", klein_order3}, {cyclic_group(5), "C5.k2", pw(2)}},
                {{abelian_group({2, 2}), "C2xC2.w", klein_order3}, {abelian_group({3, 3}), "C3xC3.inv", detail::inversion_of}},
                {{cyclic_group(7), "C7.k2", pw(2)}, {cyclic_group(13), "C13.k3", pw(3)}}};
  }
  if (extended) {
    products.push_back({{frobenius_75(), "F75.inv", [](const FiniteGroup& G) {
                           const auto auts = automorphism_group(G);
                           for (const auto& a : auts)
                             if (is_fpf(G, a) && gcd_u64(a.order(), 75) == 1) return a;
                           throw std::logic_error("corpus: no coprime fixed-point-free automorphism of F75");
                         }},
                        {cyclic_group(7), "C7.inv", detail::inversion_of}});
  }
  for (const auto& [a, b] : products) {
    const FiniteGroup A = a.spec.build(), B = b.spec.build();
    const GroupSpec s = direct_product(a.spec, b.spec);
    const FiniteGroup G = s.build();
    const Automorphism phi = detail::product_automorphism(a.spec, A, a.aut(A), b.spec, B, b.aut(B), G);
    add(detail::make_entry("product", "product." + a.name + "." + b.name, s, G, phi));
  }

  // (v) exhaustive scan: every fixed-point-free automorphism of small builtin groups,
  // subsampled by seed
  struct Scan {
    GroupSpec spec;
    std::string name;
  };
  std::vector<Scan> scans =
      smoke ? std::vector<Scan>{{abelian_group({2, 2}), "C2xC2"}, {frobenius_75(), "F75"}}
            : std::vector<Scan>{{abelian_group({2, 2}), "C2xC2"}, {abelian_group({2, 2, 2}), "C2xC2xC2"},
                                {abelian_group({3, 3}), "C3xC3"},  {quaternion_group(), "Q8"},
                                {symmetric_group(3), "S3"},       {semidirect_cyclic(7, 3), "C7xC3"},
                                {abelian_group({2, 2, 2, 2}), "C2^4"}, {frobenius_75(), "F75"},
                                {frobenius_80(), "F80"},          {frobenius_147(), "F147"}};
  const std::size_t limit = smoke ? 2 : extended ? 20 : 6;
  for (const auto& sc : scans) {
    const FiniteGroup G = sc.spec.build();
    if (G.order() > 200) continue;
    std::vector<Automorphism> fpf;
    for (const auto& a : automorphism_group(G))
      if (is_fpf(G, a)) fpf.push_back(a);
    const auto pick = detail::seeded_sample(fpf.size(), limit, seed ^ detail::tag_hash(sc.name));
    for (auto i : pick)
      add(detail::make_entry("scan", "scan." + sc.name + ".a" + std::to_string(i), sc.spec, G, fpf[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Records and report

enum class CheckResult { pass, fail, skip };

inline const char* to_string(CheckResult r) {
  switch (r) {
    case CheckResult::pass: return "PASS";
    case CheckResult::fail: return "FAIL";
    case CheckResult::skip: return "SKIP";
  }
  return "?";
}

struct CheckRecord {
  std::string check;
  std::string entry;
  BigInt lhs = 0;
  BigInt rhs = 0;
  CheckResult result = CheckResult::skip;
  std::string reason;       // ok | bound-violated | theorem-violation | a SKIP token
  std::string mode = "na";  // canonical | exhaustive | na

  BigInt slack() const { return rhs - lhs; }

  std::string line() const {
    std::ostringstream os;
    os << "CHECK name=" << check << " entry=" << entry << " lhs=" << lhs << " rhs=" << rhs
       << " result=" << to_string(result) << " reason=" << reason << " mode=" << mode;
    return os.str();
  }
};

inline CheckRecord compare_record(std::string check, const std::string& entry, const BigInt& lhs, const BigInt& rhs,
                                  std::string mode = "na") {
  CheckRecord r{std::move(check), entry, lhs, rhs, CheckResult::pass, "ok", std::move(mode)};
  if (lhs > rhs) {
    r.result = CheckResult::fail;
    r.reason = "bound-violated";
  }
  return r;
}

inline CheckRecord skip_record(std::string check, const std::string& entry, std::string reason,
                               std::string mode = "na") {
  return {std::move(check), entry, 0, 0, CheckResult::skip, std::move(reason), std::move(mode)};
}

/// FNV-1a over the CHECK lines.
inline std::uint64_t report_hash(const std::vector<CheckRecord>& records) {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& r : records) {
    for (unsigned char c : r.line() + "\n") {
      h ^= c;
      h *= 1099511628211ull;
    }
  }
  return h;
}

inline int report_exit_code(const std::vector<CheckRecord>& records) {
  for (const auto& r : records)
    if (r.result == CheckResult::fail) return 1;
  return 0;
}

/// Header line with counts and hash, then one CHECK line per record.
inline std::string emit_report(const std::vector<CheckRecord>& records) {
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : records) {
    pass += r.result == CheckResult::pass;
    fail += r.result == CheckResult::fail;
    skip += r.result == CheckResult::skip;
  }
  std::ostringstream os;
  os << "# fitlab report records=" << records.size() << " pass=" << pass << " fail=" << fail << " skip=" << skip
     << " hash=" << std::hex << std::setw(16) << std::setfill('0') << report_hash(records) << std::dec << "\n";
  for (const auto& r : records) os << r.line() << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Checks

/// Group, automorphism and Fitting height of an entry, built once.
struct PreparedEntry {
  const CorpusEntry* entry = nullptr;
  FiniteGroup G;
  Automorphism phi;
  bool fpf = false;
  bool coprime = false;
  std::optional<std::size_t> height;
};

inline PreparedEntry prepare(const CorpusEntry& e) {
  FiniteGroup G = e.group();
  Automorphism phi = e.automorphism(G);
  PreparedEntry p{&e, std::move(G), std::move(phi), false, false, std::nullopt};
  p.fpf = is_fpf(p.G, p.phi);
  p.coprime = gcd_u64(p.phi.order(), p.G.order()) == 1;
  if (is_soluble(p.G)) p.height = fitting_height(p.G).height;
  return p;
}

/// A polynomial together with the section family it was verified on.
struct IdentityChoice {
  IntPoly f;
  SectionMode mode = SectionMode::canonical;
  std::vector<Section> sections;
  EaVerdict verdict;
};

/// Exhaustive sections when Aut(G) is within its caps, canonical otherwise.
inline std::pair<std::vector<Section>, SectionMode> best_sections(const FiniteGroup& G) {
  if (G.order() <= kAutGroupOrderCap) {
    try {
      return {characteristic_sections(G, SectionMode::exhaustive), SectionMode::exhaustive};
    } catch (const CapExceeded&) {
    }
  }
  return {characteristic_sections(G, SectionMode::canonical), SectionMode::canonical};
}

inline IdentityChoice choose_identity(const PreparedEntry& p, std::optional<IntPoly> f = std::nullopt) {
  IdentityChoice c;
  auto [sections, mode] = best_sections(p.G);
  c.sections = std::move(sections);
  c.mode = mode;
  c.f = f ? *f : synthesize_identity(p.G, p.phi, c.sections).poly;
  c.verdict = ea_identity_holds(p.G, p.phi, c.f, c.sections);
  return c;
}

inline std::optional<std::string> fpf_skip(const PreparedEntry& p) {
  if (!p.fpf) return std::string("not-fpf");
  return std::nullopt;
}

inline CheckRecord verify_sgb(const PreparedEntry& p) {
  const auto& id = p.entry->id;
  if (auto s = fpf_skip(p)) return skip_record("sgb", id, *s);
  if (!p.coprime) return skip_record("sgb", id, "not-coprime");
  return compare_record("sgb", id, BigInt(*p.height), BigInt(numth::alpha(BigInt(p.phi.order()))));
}

inline CheckRecord verify_dade_jabara(const PreparedEntry& p) {
  const auto& id = p.entry->id;
  if (auto s = fpf_skip(p)) return skip_record("dade_jabara", id, *s);
  const unsigned a = numth::alpha(BigInt(p.phi.order()));
  return compare_record("dade_jabara", id, BigInt(*p.height), BigInt(7) * a * a);
}

inline CheckRecord verify_t0(const PreparedEntry& p, const IdentityChoice& c) {
  const auto& id = p.entry->id;
  const std::string mode = to_string(c.mode);
  if (auto s = fpf_skip(p)) return skip_record("t0", id, *s, mode);
  if (c.f.is_zero() || content(c.f) != 1) return skip_record("t0", id, "not-primitive", mode);
  if (!c.verdict.holds) throw std::invalid_argument("verify_t0: f is not an identity");
  const BigInt d = c.f.degree();
  return compare_record("t0", id, BigInt(*p.height), 2 + 112 * d * d, mode);
}

inline CheckRecord verify_t1(const PreparedEntry& p, const IdentityChoice& c) {
  const auto& id = p.entry->id;
  const std::string mode = to_string(c.mode);
  if (auto s = fpf_skip(p)) return skip_record("t1", id, *s, mode);
  if (c.f.is_zero()) throw std::invalid_argument("verify_t1: f must be nonzero");
  if (!c.verdict.holds) throw std::invalid_argument("verify_t1: f is not an identity");
  if (c.f.degree() < 1 || c.f.degree() > static_cast<int>(kSigmaMaxDegree)) return skip_record("t1", id, "degree-cap", mode);
  const SigmaContext ctx = build_context(c.f);
  for (auto q : numth::prime_divisors(p.G.order()))
    if (sigma_contains(ctx, q)) return skip_record("t1", id, "sigma-violated:" + std::to_string(q), mode);
  const BigInt irr = irr_count(c.f);
  return compare_record("t1", id, BigInt(*p.height), 2 + irr * irr, mode);
}

namespace detail {

// Smallest k with psi^k trivial on H.
inline std::uint64_t restricted_order(const Automorphism& psi, const Subgroup& H) {
  std::uint64_t l = 1;
  for (auto h : H.elements()) {
    std::uint64_t len = 1;
    for (auto x = psi(h); x != h; x = psi(x)) ++len;
    l = lcm_u64(l, len);
  }
  return l;
}

}  // namespace detail

struct PrWeakData {
  BigInt order_lhs = 0;    // max over q of |phi on Gbar/F(Gbar)|
  unsigned alpha_lhs = 0;  // max alpha of those orders
  std::uint64_t pm_lhs = 1;  // max p^m
  // pair with the largest ratio (order of psi on Gbar/F(Gbar)) / p^m
  std::uint64_t psi_lhs = 1, psi_rhs = 1;
};

/// For each prime q of |G|: Gbar = G/O_{q',q}(G) and D = Gbar/F(Gbar).
inline PrWeakData pr_weak_data(const PreparedEntry& p) {
  PrWeakData out;
  for (auto q : numth::prime_divisors(p.G.order())) {
    const Quotient Qb = quotient(p.G, o_qprime_q(p.G, q));
    const Automorphism phib = induced_automorphism(p.G, p.phi, Qb);
    const FiniteGroup& Gb = Qb.group;
    const Quotient Qd = quotient(Gb, fitting_subgroup(Gb));
    const Automorphism phid = induced_automorphism(Gb, phib, Qd);
    const std::uint64_t od = phid.order();
    if (BigInt(od) > out.order_lhs) out.order_lhs = od;
    out.alpha_lhs = std::max(out.alpha_lhs, numth::alpha(BigInt(od)));
    const std::uint64_t nb = phib.order();
    std::optional<SubgroupLattice> lattice;
    for (auto pr : numth::prime_divisors(p.phi.order())) {
      const std::uint64_t s = nb / pi_part(nb, {pr});
      const Automorphism psi = phib.pow(static_cast<std::int64_t>(s));
      const PrimeSet others = complement_primes(Gb.order(), {pr});
      std::uint64_t pm = 1;
      if (!others.empty()) {
        if (!lattice) lattice = subgroup_lattice(Gb);
        pm = detail::restricted_order(psi, invariant_hall(Gb, phib, others, *lattice));
      }
      out.pm_lhs = std::max(out.pm_lhs, pm);
      const std::uint64_t psi_d = pi_part(od, {pr});
      if (psi_d * out.psi_rhs > out.psi_lhs * pm) {
        out.psi_lhs = psi_d;
        out.psi_rhs = pm;
      }
    }
  }
  return out;
}

/// Order and alpha bounds on Gbar/F(Gbar), the inner p^m <= 2d bound and the
/// order of psi on Gbar/F(Gbar) against p^m. Returns four records.
inline std::vector<CheckRecord> verify_pr_weak(const PreparedEntry& p, const IdentityChoice& c) {
  const auto& id = p.entry->id;
  const std::string mode = to_string(c.mode);
  const std::vector<std::string> names{"pr_weak", "pr_weak_alpha", "pr_weak_pm", "pr_weak_psi"};
  auto skip_all = [&](const std::string& reason) {
    std::vector<CheckRecord> out;
    for (const auto& n : names) out.push_back(skip_record(n, id, reason, mode));
    return out;
  };
  if (auto s = fpf_skip(p)) return skip_all(*s);
  if (c.f.is_zero() || !c.verdict.holds) throw std::invalid_argument("verify_pr_weak: f is not a nonzero identity");
  for (auto q : numth::prime_divisors(p.G.order()))
    if (ModPoly::reduce(c.f, q).is_zero()) return skip_all("vanishing-reduction:" + std::to_string(q));
  const std::uint64_t d = static_cast<std::uint64_t>(c.f.degree());
  if (d == 0) return skip_all("degree-cap");
  const PrWeakData w = pr_weak_data(p);
  return {compare_record(names[0], id, w.order_lhs, big_pow(BigInt(2 * d), 2 * d), mode),
          compare_record(names[1], id, BigInt(w.alpha_lhs), BigInt(4 * d), mode),
          compare_record(names[2], id, BigInt(w.pm_lhs), BigInt(2 * d), mode),
          compare_record(names[3], id, BigInt(w.psi_lhs), BigInt(w.psi_rhs), mode)};
}

/// All checks for one entry; exceptions from theorem assertions become FAIL records.
inline std::vector<CheckRecord> verify_entry(const CorpusEntry& e) {
  std::vector<CheckRecord> out;
  try {
    const PreparedEntry p = prepare(e);
    if (!p.fpf) {
      for (const char* n : {"sgb", "dade_jabara", "t0", "t1", "pr_weak", "pr_weak_alpha", "pr_weak_pm", "pr_weak_psi"})
        out.push_back(skip_record(n, e.id, "not-fpf"));
      return out;
    }
    // a group with a fixed-point-free automorphism is soluble
    if (!p.height) throw TheoremViolation("verify_entry: insoluble group with a fixed-point-free automorphism");
    out.push_back(verify_sgb(p));
    out.push_back(verify_dade_jabara(p));
    IdentityChoice c;
    try {
      c = choose_identity(p);
    } catch (const CapExceeded&) {
      for (const char* n : {"t0", "t1", "pr_weak", "pr_weak_alpha", "pr_weak_pm", "pr_weak_psi"})
        out.push_back(skip_record(n, e.id, "cap-exceeded"));
      return out;
    }
    out.push_back(verify_t0(p, c));
    out.push_back(verify_t1(p, c));
    for (auto& r : verify_pr_weak(p, c)) out.push_back(std::move(r));
  } catch (const TheoremViolation&) {
    out.push_back({"theorem", e.id, 0, 0, CheckResult::fail, "theorem-violation", "na"});
  }
  return out;
}

/// Verifies entries on `jobs` threads and merges the records in corpus order.
inline std::vector<CheckRecord> verify_corpus(const std::vector<CorpusEntry>& corpus, unsigned jobs = 1) {
  std::vector<std::vector<CheckRecord>> per(corpus.size());
  std::vector<std::exception_ptr> errors(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < corpus.size();) {
      try {
        per[i] = verify_entry(corpus[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<CheckRecord> out;
  for (auto& v : per)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

}  // namespace fitlab

#include <gtest/gtest.h>

#include <map>
#include <regex>
#include <set>

#include "fitlab/harness.hpp"
#include "naive_group.hpp"

using namespace fitlab;
using namespace fitlab_test;

namespace {

const CorpusEntry& find_entry(const std::vector<CorpusEntry>& corpus, const std::string& suffix) {
  for (const auto& e : corpus)
    if (e.id.size() >= suffix.size() && e.id.compare(e.id.size() - suffix.size(), suffix.size(), suffix) == 0)
      return e;
  throw std::runtime_error("no corpus entry " + suffix);
}

const std::vector<CorpusEntry>& smoke() {
  static const auto c = corpus_generate(Profile::smoke, 0);
  return c;
}

const std::vector<CorpusEntry>& standard() {
  static const auto c = corpus_generate(Profile::standard, 0);
  return c;
}

// Number of prime factors with multiplicity, by trial division.
unsigned trial_alpha(std::uint64_t n) {
  unsigned a = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      ++a;
    }
  return a + (n > 1);
}

// The automorphism extended from generator images along words, on raw permutations.
std::map<Perm, Perm> naive_extension(const CorpusEntry& e) {
  std::map<Perm, Perm> m{{perm_identity(e.spec.degree), perm_identity(e.spec.degree)}};
  std::vector<Perm> frontier{perm_identity(e.spec.degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (std::size_t i = 0; i < e.spec.gens.size(); ++i) {
        Perm y = perm_mul(x, e.spec.gens[i]);
        if (!m.count(y)) {
          m[y] = perm_mul(m[x], e.auto_images[i]);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return m;
}

std::uint64_t naive_order(const std::map<Perm, Perm>& m) {
  std::uint64_t l = 1;
  for (const auto& [x, y] : m) {
    std::uint64_t len = 1;
    for (Perm z = y; z != x; z = m.at(z)) ++len;
    l = std::lcm(l, len);
  }
  return l;
}

bool naive_fpf(const std::map<Perm, Perm>& m) {
  for (const auto& [x, y] : m)
    if (x == y && !perm_is_identity(x)) return false;
  return true;
}

// Prime p lies in sigma(x - a) iff p <= 4 or p divides Res(x - a, x^24 - 1) = a^24 - 1,
// where a root of unity (a = 1 or -1) is divided out first and leaves resultant 1.
bool linear_sigma_oracle(std::int64_t a, std::uint64_t p) {
  if (p <= 4) return true;
  BigInt r = 1;
  for (int i = 0; i < 24; ++i) r *= a;
  if (r == 1) return false;
  return (r - 1) % p == 0;
}

}  // namespace

TEST(Profile, ParseAndErrors) {
  EXPECT_EQ(parse_profile("smoke"), Profile::smoke);
  EXPECT_EQ(parse_profile("standard"), Profile::standard);
  EXPECT_EQ(parse_profile("extended"), Profile::extended);
  EXPECT_THROW(parse_profile("huge"), std::invalid_argument);
  EXPECT_STREQ(to_string(Profile::standard), "standard");
}

TEST(Corpus, SmokeContents) {
  const auto& c = smoke();
  EXPECT_GE(c.size(), 10u);
  const auto& e = find_entry(c, "inversion.C15");
  EXPECT_EQ(e.group_order, 15u);
  EXPECT_EQ(e.aut_order, 2u);
  EXPECT_TRUE(e.fpf);
  EXPECT_TRUE(e.coprime);
  std::set<std::string> ids;
  for (const auto& x : c) ids.insert(x.id);
  EXPECT_EQ(ids.size(), c.size());
}

TEST(Corpus, PowerMapOnC7) {
  const auto& e = find_entry(smoke(), "power.C7.k3");
  EXPECT_TRUE(e.fpf);
  std::uint64_t k = 1, x = 3;
  while (x != 1) x = x * 3 % 7, ++k;
  EXPECT_EQ(e.aut_order, k);
  EXPECT_EQ(e.aut_order, 6u);
  EXPECT_FALSE(find_entry(smoke(), "power.C7.k1").fpf);
}

TEST(Corpus, CachedFlagsMatchNaiveRecomputation) {
  for (const auto& e : standard()) {
    const auto m = naive_extension(e);
    EXPECT_EQ(m.size(), e.group_order) << e.id;
    EXPECT_EQ(naive_order(m), e.aut_order) << e.id;
    EXPECT_EQ(naive_fpf(m), e.fpf) << e.id;
    EXPECT_EQ(std::gcd(e.aut_order, static_cast<std::uint64_t>(e.group_order)) == 1, e.coprime) << e.id;
  }
}

TEST(Corpus, HeightsMatchNaiveLattice) {
  std::size_t checked = 0;
  std::map<std::vector<Perm>, std::size_t> naive_heights;
  for (const auto& e : standard()) {
    // the naive path scans every union of conjugacy classes, so keep the class count small
    const FiniteGroup G = e.group();
    if (e.group_order > 24 || (is_abelian(G, G.whole()) && e.group_order > 16)) continue;
    if (!naive_heights.count(e.spec.gens)) naive_heights[e.spec.gens] = Naive(e.spec).fitting_height();
    ASSERT_TRUE(e.height) << e.id;
    EXPECT_EQ(*e.height, naive_heights[e.spec.gens]) << e.id;
    ++checked;
  }
  EXPECT_GE(checked, 5u);
}

TEST(Corpus, StandardSizes) {
  const auto& c = standard();
  std::size_t fpf = 0, h2 = 0;
  for (const auto& e : c) {
    fpf += e.fpf;
    h2 += e.height && *e.height == 2;
    if (e.family == "scan") {
      EXPECT_LE(e.group_order, 200u);
    }
  }
  EXPECT_GE(c.size(), 30u);
  EXPECT_GE(fpf, 30u);
  EXPECT_GE(h2, 5u);
}

TEST(Corpus, DeterministicGivenSeed) {
  const auto a = corpus_generate(Profile::standard, 42);
  const auto b = corpus_generate(Profile::standard, 42);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].auto_images, b[i].auto_images);
  }
  const auto c = corpus_generate(Profile::standard, 43);
  bool differs = a.size() != c.size();
  for (std::size_t i = 0; !differs && i < a.size(); ++i) differs = a[i].auto_images != c[i].auto_images;
  EXPECT_TRUE(differs);
}

TEST(VerifySgb, Examples) {
  const auto p = prepare(find_entry(smoke(), "inversion.C15"));
  const auto r = verify_sgb(p);
  EXPECT_EQ(r.result, CheckResult::pass);
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(r.rhs, trial_alpha(2));
  EXPECT_EQ(r.slack(), 0);

  EXPECT_EQ(verify_sgb(prepare(find_entry(smoke(), "power.C7.k1"))).reason, "not-fpf");

  bool saw_non_coprime = false, saw_equality_h2 = false;
  for (const auto& e : standard()) {
    const auto q = prepare(e);
    const auto rec = verify_sgb(q);
    if (e.fpf && !e.coprime) {
      EXPECT_EQ(rec.reason, "not-coprime");
      saw_non_coprime = true;
    }
    if (rec.result == CheckResult::pass) {
      EXPECT_EQ(rec.rhs, trial_alpha(e.aut_order)) << e.id;
    }
    saw_equality_h2 |= rec.result == CheckResult::pass && rec.lhs == 2 && rec.rhs == 2;
  }
  EXPECT_TRUE(saw_non_coprime);
  EXPECT_TRUE(saw_equality_h2);
}

TEST(VerifyDadeJabara, Examples) {
  const auto r = verify_dade_jabara(prepare(find_entry(smoke(), "inversion.C15")));
  EXPECT_EQ(r.result, CheckResult::pass);
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(r.rhs, 7);
  const auto s = verify_dade_jabara(prepare(find_entry(smoke(), "semidirect.C7xC3")));
  EXPECT_EQ(s.result, CheckResult::skip);
  EXPECT_EQ(s.reason, "not-fpf");
  for (const auto& e : standard()) {
    const auto rec = verify_dade_jabara(prepare(e));
    if (!e.fpf) continue;
    const unsigned a = trial_alpha(e.aut_order);
    EXPECT_EQ(rec.rhs, 7 * a * a) << e.id;
    EXPECT_EQ(rec.result, CheckResult::pass) << e.id;
  }
}

TEST(VerifyT0, Examples) {
  const auto p = prepare(find_entry(smoke(), "inversion.C15"));
  const auto c = choose_identity(p, IntPoly::parse("x+1"));
  EXPECT_TRUE(c.verdict.holds);
  EXPECT_EQ(c.mode, SectionMode::exhaustive);
  const auto r = verify_t0(p, c);
  EXPECT_EQ(r.result, CheckResult::pass);
  EXPECT_EQ(r.rhs, 114);
  EXPECT_EQ(r.mode, "exhaustive");

  const auto d = choose_identity(p, IntPoly::parse("2x+2"));
  const auto s = verify_t0(p, d);
  EXPECT_EQ(s.result, CheckResult::skip);
  EXPECT_EQ(s.reason, "not-primitive");
}

TEST(VerifyT1, Examples) {
  const auto c15 = prepare(find_entry(smoke(), "inversion.C15"));
  const auto r = verify_t1(c15, choose_identity(c15, IntPoly::parse("x+1")));
  EXPECT_EQ(r.result, CheckResult::skip);
  EXPECT_EQ(r.reason, "sigma-violated:3");

  // decided by the predicate; the oracle says 7 divides 3^24 - 1
  const auto c7 = prepare(find_entry(smoke(), "power.C7.k3"));
  const auto s = verify_t1(c7, choose_identity(c7, IntPoly::parse("x-3")));
  ASSERT_TRUE(linear_sigma_oracle(3, 7));
  EXPECT_EQ(s.result, CheckResult::skip);
  EXPECT_EQ(s.reason, "sigma-violated:7");

  // 11 does not divide 2^24 - 1 and exceeds 4, so the bound is asserted
  const auto c11 = prepare(find_entry(smoke(), "power.C11.k2"));
  ASSERT_FALSE(linear_sigma_oracle(2, 11));
  const auto t = verify_t1(c11, choose_identity(c11, IntPoly::parse("x-2")));
  EXPECT_EQ(t.result, CheckResult::pass);
  EXPECT_EQ(t.lhs, 1);
  EXPECT_EQ(t.rhs, 3);

  // x^10 - 1 is an identity above the degree cap
  const auto c11_long = prepare(find_entry(smoke(), "power.C11.k2"));
  const auto u = verify_t1(c11_long, choose_identity(c11_long, IntPoly::x_pow_minus_one(c11_long.phi.order())));
  EXPECT_EQ(u.result, CheckResult::skip);
  EXPECT_EQ(u.reason, "degree-cap");
}

TEST(VerifyT1, LinearDecisionsMatchResultantOracle) {
  for (const auto& e : standard()) {
    if (!e.fpf) continue;
    const auto p = prepare(e);
    const auto c = choose_identity(p);
    if (c.f.degree() != 1 || c.f.coeff(1) != 1) continue;
    const auto a = static_cast<std::int64_t>(-c.f.coeff(0));
    std::optional<std::uint64_t> bad;
    for (auto q : numth::prime_divisors(e.group_order))
      if (!bad && linear_sigma_oracle(a, q)) bad = q;
    const auto r = verify_t1(p, c);
    if (bad) {
      EXPECT_EQ(r.reason, "sigma-violated:" + std::to_string(*bad)) << e.id;
    } else {
      EXPECT_EQ(r.result, CheckResult::pass) << e.id;
    }
  }
}

TEST(VerifyPrWeak, Examples) {
  const auto p = prepare(find_entry(smoke(), "inversion.C15"));
  const auto recs = verify_pr_weak(p, choose_identity(p, IntPoly::parse("x+1")));
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[0].check, "pr_weak");
  EXPECT_EQ(recs[0].lhs, 1);
  EXPECT_EQ(recs[0].rhs, 4);
  for (const auto& r : recs) EXPECT_EQ(r.result, CheckResult::pass) << r.check;

  // x^|phi| - 1 is always an identity and gives a generous bound
  for (const auto& e : smoke()) {
    if (e.family != "scan" || !e.fpf) continue;
    const auto q = prepare(e);
    const std::string id = e.id;
    for (const auto& r : verify_pr_weak(q, choose_identity(q, IntPoly::x_pow_minus_one(q.phi.order()))))
      EXPECT_EQ(r.result, CheckResult::pass) << id << " " << r.check;
  }

  const auto c5 = prepare(find_entry(smoke(), "power.C5.k2"));
  const auto c = choose_identity(c5, IntPoly::parse("5x-10"));
  ASSERT_TRUE(c.verdict.holds);
  for (const auto& r : verify_pr_weak(c5, c)) EXPECT_EQ(r.reason, "vanishing-reduction:5");
}

TEST(VerifyPrWeak, TrivialTopForNilpotentGroups) {
  // for nilpotent G every Gbar is a q'-group's quotient by its own Fitting subgroup
  for (const auto& e : standard()) {
    if (!e.fpf || !e.height || *e.height != 1) continue;
    const auto p = prepare(e);
    const auto w = pr_weak_data(p);
    EXPECT_EQ(w.order_lhs, 1) << e.id;
    EXPECT_EQ(w.alpha_lhs, 0u) << e.id;
  }
}

TEST(Report, EmptyAndSingle) {
  const std::string empty = emit_report({});
  EXPECT_EQ(empty, "# fitlab report records=0 pass=0 fail=0 skip=0 hash=cbf29ce484222325\n");
  EXPECT_EQ(report_exit_code({}), 0);

  const auto pass = compare_record("sgb", "e000.x", 1, 1);
  const std::string one = emit_report({pass});
  EXPECT_NE(one.find("\nCHECK name=sgb entry=e000.x lhs=1 rhs=1 result=PASS reason=ok mode=na\n"), std::string::npos);
  EXPECT_EQ(report_exit_code({pass}), 0);

  const auto fail = compare_record("sgb", "e000.x", 3, 2);
  EXPECT_EQ(fail.result, CheckResult::fail);
  EXPECT_EQ(fail.reason, "bound-violated");
  EXPECT_EQ(fail.slack(), -1);
  EXPECT_EQ(report_exit_code({pass, fail}), 1);
}

TEST(Report, SmokeRunClean) {
  const auto recs = verify_corpus(smoke(), 1);
  const std::regex line(
      "CHECK name=[a-z0-9_]+ entry=e[0-9]{3}\\.[^ ]+ lhs=-?[0-9]+ rhs=-?[0-9]+ result=(PASS|FAIL|SKIP) "
      "reason=[a-z0-9:-]+ mode=(canonical|exhaustive|na)");
  const std::regex skip("not-fpf|not-coprime|sigma-violated:[0-9]+|vanishing-reduction:[0-9]+|cap-exceeded|not-primitive|degree-cap");
  for (const auto& r : recs) {
    EXPECT_TRUE(std::regex_match(r.line(), line)) << r.line();
    EXPECT_NE(r.result, CheckResult::fail) << r.line();
    if (r.result == CheckResult::skip) {
      EXPECT_TRUE(std::regex_match(r.reason, skip)) << r.line();
    }
  }
  EXPECT_EQ(report_exit_code(recs), 0);
}

TEST(Report, ParallelMergeMatchesSerial) {
  const auto a = emit_report(verify_corpus(smoke(), 1));
  const auto b = emit_report(verify_corpus(smoke(), 4));
  EXPECT_EQ(a, b);
}

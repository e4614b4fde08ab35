#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fitlab/builtins.hpp"
#include "fitlab/identities.hpp"

using namespace fitlab;

namespace {

IntPoly P(const char* s) { return IntPoly::parse(s); }

Automorphism inversion(const FiniteGroup& G) {
  std::vector<std::uint32_t> images;
  for (auto g : G.generator_indices()) images.push_back(G.inv(g));
  return Automorphism::from_generator_images(G, images);
}

Automorphism swap_c3xc3(const FiniteGroup& G) {
  const auto& g = G.generator_indices();
  return Automorphism::from_generator_images(G, {g[1], g[0]});
}

std::set<std::pair<std::uint64_t, std::size_t>> shapes(const std::vector<Section>& ss) {
  std::set<std::pair<std::uint64_t, std::size_t>> out;
  for (const auto& s : ss) out.insert({s.p, s.dim()});
  return out;
}

bool has_pair(const std::vector<Section>& ss, std::size_t a, std::size_t b) {
  return std::any_of(ss.begin(), ss.end(), [&](const Section& s) { return s.A.order() == a && s.B.order() == b; });
}

// Direct check of the induced action: phi(basis_j) and the product of basis powers
// given by column j must lie in the same coset of B.
bool matrix_matches_action(const FiniteGroup& G, const Section& s, const Automorphism& phi, const MatrixFp& M) {
  for (std::size_t j = 0; j < s.dim(); ++j) {
    std::uint32_t x = 0;
    for (std::size_t i = 0; i < s.dim(); ++i) x = G.mul(x, G.pow(s.basis[i], static_cast<std::int64_t>(M(i, j))));
    if (!s.B.contains(G.mul(G.inv(x), phi(s.basis[j])))) return false;
  }
  return true;
}

struct Sample {
  GroupSpec spec;
  std::size_t max_auts;
};

std::vector<Sample> samples() {
  return {{abelian_group({3, 3}), 20}, {cyclic_group(15), 10},      {frobenius_75(), 12},
          {abelian_group({2, 2, 2}), 15}, {quaternion_group(), 10}, {frobenius_80(), 10},
          {cyclic_group(9), 10},       {semidirect_cyclic(7, 3), 10}};
}

std::vector<Automorphism> spread(const std::vector<Automorphism>& auts, std::size_t k) {
  std::vector<Automorphism> out;
  const std::size_t step = std::max<std::size_t>(1, auts.size() / k);
  for (std::size_t i = 0; i < auts.size() && out.size() < k; i += step) out.push_back(auts[i]);
  return out;
}

}  // namespace

TEST(OrderedIdentity, Examples) {
  const auto c33 = abelian_group({3, 3}).build();
  EXPECT_TRUE(ordered_identity_holds(c33, inversion(c33), P("x + 1")).holds);
  EXPECT_TRUE(ordered_identity_holds(c33, Automorphism::identity(c33), P("x - 1")).holds);
  const auto c5 = cyclic_group(5).build();
  const auto sq = power_automorphism(c5, 2);
  const auto v = ordered_identity_holds(c5, sq, P("x - 3"));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_NE(sq(*v.witness), c5.pow(*v.witness, 3));
  EXPECT_TRUE(ordered_identity_holds(c5, sq, P("x - 2")).holds);
  EXPECT_THROW(ordered_identity_holds(c5, sq, IntPoly{}), std::invalid_argument);
}

TEST(OrderedIdentity, LeftToRightOrder) {
  // On S3 with conjugation by (1 2), g * g^phi is not always g^phi * g, so the
  // product order matters; compare with an explicit evaluation.
  const auto s3 = symmetric_group(3).build();
  const auto phi = Automorphism::inner(s3, s3.generator_indices()[1]);
  for (const auto& f : {P("x + 1"), P("2*x + 1"), P("x^2 + x + 1"), P("6")}) {
    bool all = true;
    for (std::uint32_t g = 0; g < s3.order(); ++g) {
      std::uint32_t acc = 0, cur = g;
      for (int i = 0; i <= f.degree(); ++i) {
        const auto e = static_cast<std::int64_t>(f.coeff(static_cast<std::size_t>(i)));
        for (std::int64_t k = 0; k < e; ++k) acc = s3.mul(acc, cur);
        cur = phi(cur);
      }
      all = all && acc == 0;
    }
    EXPECT_EQ(ordered_identity_holds(s3, phi, f).holds, all) << f;
  }
}

TEST(Sections, Examples) {
  const auto c6 = cyclic_group(6).build();
  const auto can = characteristic_sections(c6, SectionMode::canonical);
  const auto exh = characteristic_sections(c6, SectionMode::exhaustive);
  const std::set<std::pair<std::uint64_t, std::size_t>> expected{{2, 1}, {3, 1}};
  EXPECT_EQ(shapes(can), expected);
  EXPECT_EQ(shapes(exh), expected);
  EXPECT_EQ(can.size(), exh.size());
  const auto s3 = symmetric_group(3).build();
  const auto s3s = characteristic_sections(s3, SectionMode::canonical);
  EXPECT_TRUE(has_pair(s3s, 3, 1));
  EXPECT_TRUE(has_pair(s3s, 6, 3));
  const auto c4 = cyclic_group(4).build();
  for (auto mode : {SectionMode::canonical, SectionMode::exhaustive}) {
    const auto c4s = characteristic_sections(c4, mode);
    EXPECT_TRUE(has_pair(c4s, 2, 1));
    EXPECT_TRUE(has_pair(c4s, 4, 2));
    EXPECT_FALSE(has_pair(c4s, 4, 1));
    for (const auto& s : c4s) EXPECT_EQ(s.provenance, mode);
  }
}

TEST(Sections, Invariants) {
  for (const auto& sample : samples()) {
    const auto G = sample.spec.build();
    for (auto mode : {SectionMode::canonical, SectionMode::exhaustive}) {
      for (const auto& s : characteristic_sections(G, mode)) {
        std::uint64_t size = 1;
        for (std::size_t i = 0; i < s.dim(); ++i) size *= s.p;
        EXPECT_EQ(size * s.B.order(), s.A.order());
        for (auto a : s.A.elements()) {
          EXPECT_TRUE(s.B.contains(G.pow(a, static_cast<std::int64_t>(s.p))));
          EXPECT_NE(s.code[a], UINT32_MAX);
        }
        EXPECT_TRUE(is_normal(G, s.A));
        EXPECT_TRUE(is_normal(G, s.B));
      }
    }
  }
}

TEST(Sections, CanonicalInsideExhaustive) {
  for (const auto& sample : samples()) {
    const auto G = sample.spec.build();
    const auto can = characteristic_sections(G, SectionMode::canonical);
    const auto exh = characteristic_sections(G, SectionMode::exhaustive);
    for (const auto& s : can) {
      const bool found = std::any_of(exh.begin(), exh.end(), [&](const Section& t) { return t.A == s.A && t.B == s.B; });
      EXPECT_TRUE(found) << G.order();
    }
  }
}

TEST(InducedMatrix, Examples) {
  const auto c5 = cyclic_group(5).build();
  const auto secs = characteristic_sections(c5, SectionMode::canonical);
  ASSERT_EQ(secs.size(), 1u);
  EXPECT_EQ(induced_matrix(c5, secs[0], inversion(c5))(0, 0), 4u);
  EXPECT_EQ(induced_matrix(c5, secs[0], power_automorphism(c5, 2))(0, 0), 2u);
  const auto c33 = abelian_group({3, 3}).build();
  const auto s33 = characteristic_sections(c33, SectionMode::exhaustive);
  ASSERT_EQ(s33.size(), 1u);
  const auto& gens = c33.generator_indices();
  ASSERT_EQ(s33[0].basis, (std::vector<std::uint32_t>{gens[0], gens[1]}));
  const auto M = induced_matrix(c33, s33[0], swap_c3xc3(c33));
  EXPECT_EQ(M, MatrixFp::from_ints(PrimeField(3), 2, 2, {0, 1, 1, 0}));
}

TEST(InducedMatrix, MatchesGroupAction) {
  for (const auto& sample : samples()) {
    const auto G = sample.spec.build();
    const auto auts = spread(automorphism_group(G), sample.max_auts);
    for (const auto& s : characteristic_sections(G, SectionMode::exhaustive)) {
      for (const auto& a : auts) {
        const auto M = induced_matrix(G, s, a);
        EXPECT_TRUE(M.invertible());
        EXPECT_TRUE(matrix_matches_action(G, s, a, M));
      }
    }
  }
}

TEST(EaIdentity, Examples) {
  for (const auto& spec : {abelian_group({3, 3}), cyclic_group(15), abelian_group({5, 5, 7})}) {
    const auto G = spec.build();
    const auto v = ea_identity_holds(G, inversion(G), P("x + 1"), SectionMode::exhaustive);
    EXPECT_TRUE(v.holds);
    for (const auto& s : v.sections) EXPECT_EQ(s.result, SectionResult::pass);
  }
  const auto c5 = cyclic_group(5).build();
  const auto sq = power_automorphism(c5, 2);
  EXPECT_TRUE(ea_identity_holds(c5, sq, P("x - 2"), SectionMode::canonical).holds);
  const auto bad = ea_identity_holds(c5, sq, P("x - 1"), SectionMode::canonical);
  EXPECT_FALSE(bad.holds);
  EXPECT_EQ(bad.sections[0].result, SectionResult::fail);
  const auto vac = ea_identity_holds(c5, sq, P("5*x - 10"), SectionMode::canonical);
  EXPECT_TRUE(vac.holds);
  EXPECT_EQ(vac.sections[0].result, SectionResult::vacuous);
  EXPECT_EQ(vac.vanishing_primes, (std::vector<std::uint64_t>{5}));
  EXPECT_TRUE(ea_identity_holds(c5, sq, IntPoly{}, SectionMode::canonical).holds);
}

TEST(EaIdentity, UniversalIdentities) {
  for (const auto& sample : samples()) {
    const auto G = sample.spec.build();
    const auto secs = characteristic_sections(G, SectionMode::exhaustive);
    for (const auto& a : spread(automorphism_group(G), sample.max_auts)) {
      EXPECT_TRUE(ea_identity_holds(G, a, IntPoly::x_pow_minus_one(a.order()), secs).holds);
      const auto constant = ea_identity_holds(G, a, IntPoly::constant(BigInt(G.order())), secs);
      EXPECT_TRUE(constant.holds);
      for (const auto& s : constant.sections) EXPECT_EQ(s.result, SectionResult::vacuous);
    }
  }
}

TEST(MinPolyOnSection, Examples) {
  const auto c33 = abelian_group({3, 3}).build();
  const auto s = characteristic_sections(c33, SectionMode::canonical);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(min_poly_on_section(c33, s[0], Automorphism::identity(c33)), ModPoly(3, {2, 1}));
  EXPECT_EQ(min_poly_on_section(c33, s[0], swap_c3xc3(c33)), ModPoly(3, {2, 0, 1}));
  const auto c5 = cyclic_group(5).build();
  const auto s5 = characteristic_sections(c5, SectionMode::canonical);
  EXPECT_EQ(min_poly_on_section(c5, s5[0], power_automorphism(c5, 2)), ModPoly(5, {3, 1}));
}

TEST(MinPolyOnSection, DividesCoprimeOrderPolynomial) {
  for (const auto& sample : samples()) {
    const auto G = sample.spec.build();
    const auto secs = characteristic_sections(G, SectionMode::exhaustive);
    for (const auto& a : spread(automorphism_group(G), sample.max_auts)) {
      for (const auto& s : secs) {
        const ModPoly mp = min_poly_on_section(G, s, a);
        EXPECT_EQ(mp.leading(), 1u);
        if (a.order() % s.p == 0) continue;
        const ModPoly u = ModPoly::reduce(IntPoly::x_pow_minus_one(a.order()), s.p);
        EXPECT_TRUE((u % mp).is_zero());
      }
    }
  }
}

TEST(Synthesize, Examples) {
  for (const auto& spec : {abelian_group({3, 3}), cyclic_group(15), abelian_group({5, 7})}) {
    const auto G = spec.build();
    const auto secs = characteristic_sections(G, SectionMode::exhaustive);
    const auto s = synthesize_identity(G, inversion(G), secs);
    EXPECT_TRUE(s.refined);
    EXPECT_EQ(s.poly, P("x + 1"));
    EXPECT_EQ(synthesize_identity(G, Automorphism::identity(G), secs).poly, P("x - 1"));
  }
  const auto c7 = cyclic_group(7).build();
  const auto secs7 = characteristic_sections(c7, SectionMode::exhaustive);
  const auto phi = power_automorphism(c7, 3);
  EXPECT_EQ(phi.order(), 6u);
  const auto s7 = synthesize_identity(c7, phi, secs7);
  EXPECT_TRUE(s7.refined);
  EXPECT_EQ(s7.poly, P("x - 3"));
  const auto c11 = cyclic_group(11).build();
  EXPECT_EQ(synthesize_identity(c11, power_automorphism(c11, 2), characteristic_sections(c11, SectionMode::canonical)).poly,
            P("x - 2"));
}

TEST(Synthesize, AlwaysAnIdentity) {
  for (const auto& sample : samples()) {
    const auto G = sample.spec.build();
    const auto secs = characteristic_sections(G, SectionMode::exhaustive);
    for (const auto& a : spread(automorphism_group(G), sample.max_auts)) {
      const auto s = synthesize_identity(G, a, secs);
      EXPECT_TRUE(s.poly.is_monic());
      EXPECT_LE(static_cast<std::uint64_t>(s.poly.degree()), a.order());
      EXPECT_TRUE(ea_identity_holds(G, a, s.poly, secs).holds);
    }
  }
}

TEST(IdealProperty, Examples) {
  const auto G = abelian_group({3, 5}).build();
  const auto phi = inversion(G);
  const auto secs = characteristic_sections(G, SectionMode::exhaustive);
  const auto v = ideal_property_check(G, phi, P("x + 1"), P("x + 1"), P("x"), secs);
  EXPECT_TRUE(v.holds());
  EXPECT_TRUE(ideal_property_check(G, phi, P("x + 1"), P("x + 1"), IntPoly{}, secs).holds());
  const auto u = IntPoly::x_pow_minus_one(phi.order());
  EXPECT_TRUE(ideal_property_check(G, phi, u, IntPoly::constant(BigInt(15)), P("x^2 + 3"), secs).holds());
  EXPECT_THROW(ideal_property_check(G, phi, P("x - 1"), P("x + 1"), P("x"), secs), std::invalid_argument);
}

TEST(IdentityLogic, OrderedImpliesElementaryAbelian) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::size_t ordered_hits = 0;
  for (const auto& sample : samples()) {
    const auto G = sample.spec.build();
    const auto can = characteristic_sections(G, SectionMode::canonical);
    const auto exh = characteristic_sections(G, SectionMode::exhaustive);
    for (const auto& a : spread(automorphism_group(G), sample.max_auts)) {
      std::vector<IntPoly> fs{IntPoly::x_pow_minus_one(a.order()), IntPoly::constant(BigInt(G.order())), P("x + 1"),
                              P("x - 1"), synthesize_identity(G, a, exh).poly};
      // 1 + x + ... + x^(n-1) for n = |phi|
      std::vector<BigInt> ones(a.order(), 1);
      fs.emplace_back(ones);
      for (int k = 0; k < 12; ++k) {
        IntPoly f{coef(rng), coef(rng), coef(rng)};
        if (!f.is_zero()) fs.push_back(f);
      }
      for (const auto& f : fs) {
        if (!ordered_identity_holds(G, a, f).holds) continue;
        ++ordered_hits;
        EXPECT_TRUE(ea_identity_holds(G, a, f, can).holds) << f;
        EXPECT_TRUE(ea_identity_holds(G, a, f, exh).holds) << f;
      }
    }
  }
  EXPECT_GT(ordered_hits, 50u);
}

TEST(IdentityLogic, SubspaceAndQuotientHeredity) {
  std::mt19937_64 rng(11);
  std::size_t checks = 0;
  for (const auto& sample : samples()) {
    const auto G = sample.spec.build();
    const auto secs = characteristic_sections(G, SectionMode::exhaustive);
    for (const auto& a : spread(automorphism_group(G), sample.max_auts)) {
      const auto f = synthesize_identity(G, a, secs).poly;
      for (const auto& s : secs) {
        if (s.dim() < 2) continue;
        const auto M = induced_matrix(G, s, a);
        const PrimeField F(s.p);
        const auto fb = ModPoly::reduce(f, s.p).coeffs();
        // invariant subspace: Krylov span of a random vector
        MatrixFp::Vec v(s.dim());
        for (auto& x : v) x = rng() % s.p;
        std::vector<MatrixFp::Vec> span;
        MatrixFp::Vec w = v;
        for (std::size_t k = 0; k < s.dim(); ++k) {
          span.push_back(w);
          w = M.apply(w);
        }
        MatrixFp S(F, s.dim(), span.size());
        for (std::size_t j = 0; j < span.size(); ++j)
          for (std::size_t i = 0; i < s.dim(); ++i) S(i, j) = span[j][i];
        // f(M) kills the subspace: f(M) S = 0
        EXPECT_TRUE((eval_at_matrix(fb, M) * S).is_zero());
        // and the quotient: f(M) maps everything into the subspace, here all of it, so
        // rank [S | f(M)] = rank S
        const auto fM = eval_at_matrix(fb, M);
        MatrixFp aug(F, s.dim(), span.size() + s.dim());
        for (std::size_t i = 0; i < s.dim(); ++i) {
          for (std::size_t j = 0; j < span.size(); ++j) aug(i, j) = S(i, j);
          for (std::size_t j = 0; j < s.dim(); ++j) aug(i, span.size() + j) = fM(i, j);
        }
        EXPECT_EQ(aug.rank(), S.rank());
        // restriction to the subspace: local minimal polynomial of v divides f mod p
        const ModPoly loc(F, local_min_poly(M, v));
        if (!ModPoly(F, fb).is_zero()) {
          EXPECT_TRUE((ModPoly(F, fb) % loc).is_zero());
        }
        ++checks;
      }
    }
  }
  EXPECT_GT(checks, 10u);
}

#pragma once

// Linear-algebra experiments around minimal polynomials of automorphisms:
// cyclotomic power identities, extraspecial modules with an automorphism acting
// regularly on L/Z(L), and minimal-polynomial degree bounds.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fitlab/common.hpp"
#include "fitlab/field.hpp"
#include "fitlab/intpoly.hpp"
#include "fitlab/matrix.hpp"
#include "fitlab/numth.hpp"

namespace fitlab {

inline fpoly::Poly<PrimeField> to_fp(const PrimeField& F, const IntPoly& f) { return ModPoly::reduce(f, F.characteristic()).coeffs(); }

// ---------------------------------------------------------------------------
// Cyclotomic power lemma
// ---------------------------------------------------------------------------

struct PowerCheck {
  bool annihilated = false;    // prod Phi_{n_i / gcd(n_i, s)}(M^s) = 0
  bool divisibility = false;   // p^k | order(M) implies p^k | some n_i
  std::uint64_t order = 0;     // multiplicative order of M
};

/// M = companion(prod Phi_{n_i} mod q) for distinct n_i coprime to q.
inline PowerCheck lemma_power_check(const std::vector<std::uint64_t>& n_list, std::uint64_t s, std::uint64_t q) {
  if (n_list.empty()) throw std::invalid_argument("lemma_power_check: empty index list");
  if (s == 0) throw std::invalid_argument("lemma_power_check: s must be positive");
  if (!numth::is_prime(q)) throw std::invalid_argument("lemma_power_check: q must be prime");
  std::set<std::uint64_t> seen;
  for (auto n : n_list) {
    if (n == 0) throw std::invalid_argument("lemma_power_check: indices must be positive");
    if (gcd_u64(n, q) != 1) throw std::invalid_argument("lemma_power_check: gcd(q, n_i) != 1");
    if (!seen.insert(n).second) throw std::invalid_argument("lemma_power_check: indices must be distinct");
  }
  const PrimeField F(q);
  IntPoly prod{1}, target{1};
  std::uint64_t order_bound = 1;
  for (auto n : n_list) {
    prod = prod * cyclotomic(n);
    target = target * cyclotomic(n / gcd_u64(n, s));
    order_bound = lcm_u64(order_bound, n);
  }
  const MatrixFp M = companion(F, to_fp(F, prod));
  PowerCheck out;
  out.annihilated = eval_at_matrix(to_fp(F, target), M.pow(s)).is_zero();

  const auto id = MatrixFp::identity(F, M.rows());
  if (M.pow(order_bound) != id) throw TheoremViolation("lemma_power_check: M^lcm(n_i) != 1");
  std::uint64_t order = order_bound;
  for (auto p : numth::prime_divisors(order_bound))
    while (order % p == 0 && M.pow(order / p) == id) order /= p;
  out.order = order;
  bool ok = true;
  for (auto p : numth::prime_divisors(order)) {
    std::uint64_t pk = 1;
    while (order % (pk * p) == 0) pk *= p;
    ok = ok && std::any_of(n_list.begin(), n_list.end(), [&](std::uint64_t n) { return n % pk == 0; });
  }
  out.divisibility = ok;
  return out;
}

// ---------------------------------------------------------------------------
// Matrix groups (small, enumerated)
// ---------------------------------------------------------------------------

/// All products of the generators (closure by breadth-first search), capped.
inline std::vector<MatrixFp> enumerate_matrix_group(const std::vector<MatrixFp>& gens, std::size_t cap = 5000) {
  if (gens.empty()) throw std::invalid_argument("enumerate_matrix_group: no generators");
  std::set<MatrixFp> seen;
  std::vector<MatrixFp> order;
  const auto id = MatrixFp::identity(gens[0].field(), gens[0].rows());
  seen.insert(id);
  order.push_back(id);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& g : gens) {
      MatrixFp h = order[i] * g;
      if (seen.insert(h).second) {
        if (seen.size() > cap) throw CapExceeded("enumerate_matrix_group: order above cap");
        order.push_back(std::move(h));
      }
    }
  }
  return order;
}

// ---------------------------------------------------------------------------
// Extraspecial modules
// ---------------------------------------------------------------------------

struct ExtraspecialRep {
  std::uint64_t r = 0, t = 0, p = 0, m = 0, q = 0;
  PrimeField field{2};
  /// Generators of L as matrices on V = F_q^(r^t).
  std::vector<MatrixFp> generators;
  /// Generator of Z(L); acts as a scalar.
  MatrixFp center{PrimeField(2), 0, 0};
  MatrixFp eta{PrimeField(2), 0, 0};
  /// Automorphism of L/Z(L) = F_r^2 induced by eta (column convention, entries mod r).
  std::array<std::uint64_t, 4> action{};
  /// Lengths of the orbits of eta on the nontrivial elements of L/Z(L).
  std::vector<std::uint64_t> orbit_lengths;
  std::uint64_t group_order = 0;  // |L| as enumerated

  std::uint64_t pm() const {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < m; ++i) v *= p;
    return v;
  }
};

namespace detail {

inline std::uint64_t upow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t v = 1;
  while (e--) v *= b;
  return v;
}

// 2x2 matrix over F_r acting on column vectors.
inline std::array<std::uint64_t, 2> act2(const std::array<std::uint64_t, 4>& a, std::array<std::uint64_t, 2> v, std::uint64_t r) {
  return {(a[0] * v[0] + a[1] * v[1]) % r, (a[2] * v[0] + a[3] * v[1]) % r};
}

inline std::uint64_t order2(const std::array<std::uint64_t, 4>& a, std::uint64_t r) {
  std::array<std::uint64_t, 4> acc = a;
  for (std::uint64_t k = 1; k <= r * r * r * r; ++k) {
    if (acc[0] == 1 % r && acc[1] == 0 && acc[2] == 0 && acc[3] == 1 % r) return k;
    acc = {(acc[0] * a[0] + acc[1] * a[2]) % r, (acc[0] * a[1] + acc[1] * a[3]) % r, (acc[2] * a[0] + acc[3] * a[2]) % r,
           (acc[2] * a[1] + acc[3] * a[3]) % r};
  }
  return 0;
}

// Nonzero solutions eta of X_i eta = eta Y_i for all i: the null space of the linear system.
inline std::vector<std::vector<std::uint64_t>> intertwiners(const std::vector<MatrixFp>& xs, const std::vector<MatrixFp>& ys) {
  const PrimeField& F = xs[0].field();
  const std::size_t n = xs[0].rows();
  MatrixFp system(F, xs.size() * n * n, n * n);
  for (std::size_t g = 0; g < xs.size(); ++g) {
    // (X eta - eta Y)_{ij} = sum_k X_ik eta_kj - eta_ik Y_kj
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t row = g * n * n + i * n + j;
        for (std::size_t k = 0; k < n; ++k) {
          system(row, k * n + j) = F.add(system(row, k * n + j), xs[g](i, k));
          system(row, i * n + k) = F.sub(system(row, i * n + k), ys[g](k, j));
        }
      }
  }
  return system.kernel();
}

}  // namespace detail

/// Faithful irreducible module for an extraspecial group L of order r^(2t+1) over F_q,
/// with eta normalizing L and inducing on L/Z(L) an automorphism of order p^m whose
/// orbits on the nontrivial elements all have length p^m.
///
/// Constructed cases: r = 2, t = 1, p^m = 3 (Q8 in SL(2, q) with i -> j -> k), and
/// r odd, t = 1, p^m dividing r - 1 or r + 1 (Heisenberg monomial module of dimension r,
/// the automorphism taken from SL(2, r)); the latter needs q = 1 mod r.
inline ExtraspecialRep build_extraspecial_rep(std::uint64_t r, std::uint64_t t, std::uint64_t p, std::uint64_t m, std::uint64_t q) {
  using detail::upow;
  if (!numth::is_prime(r) || !numth::is_prime(p) || !numth::is_prime(q))
    throw std::invalid_argument("build_extraspecial_rep: r, p and q must be prime");
  if (t < 1 || m < 1) throw std::invalid_argument("build_extraspecial_rep: t and m must be positive");
  if (q == p || q == r) throw std::invalid_argument("build_extraspecial_rep: field characteristic must be coprime to p*r");
  if (p == r) throw std::invalid_argument("build_extraspecial_rep: p must differ from r");
  if (t > 3 || m > 6) throw std::invalid_argument("build_extraspecial_rep: unsupported configuration");
  const std::uint64_t pm = upow(p, m);
  if (upow(r, t) + 1 < pm) throw std::invalid_argument("build_extraspecial_rep: r^t < p^m - 1, no such module exists");
  if (t != 1) throw std::invalid_argument("build_extraspecial_rep: unsupported configuration (only t = 1 is constructed)");

  ExtraspecialRep rep;
  rep.r = r;
  rep.t = t;
  rep.p = p;
  rep.m = m;
  rep.q = q;
  rep.field = PrimeField(q);
  const PrimeField& F = rep.field;
  std::vector<MatrixFp> images;

  if (r == 2) {
    if (pm != 3) throw std::invalid_argument("build_extraspecial_rep: unsupported configuration (r = 2 needs p^m = 3)");
    // i, j in SL(2, q) with i^2 = j^2 = -1 and ij = -ji
    std::optional<std::pair<std::uint64_t, std::uint64_t>> ab;
    for (std::uint64_t a = 0; a < q && !ab; ++a)
      for (std::uint64_t b = 0; b < q && !ab; ++b)
        if (F.add(F.mul(a, a), F.mul(b, b)) == F.neg(F.one())) ab = std::make_pair(a, b);
    const auto [a, b] = *ab;  // sums of two squares cover F_q
    const MatrixFp i = MatrixFp::from_ints(F, 2, 2, {0, -1, 1, 0});
    const MatrixFp j(F, 2, 2, {a, b, b, F.neg(a)});
    const MatrixFp k = i * j;
    rep.generators = {i, j};
    rep.center = MatrixFp::scalar(F, 2, F.neg(F.one()));
    images = {j, k};
    rep.action = {0, 1, 1, 1};  // i = (1,0) -> j = (0,1) -> k = (1,1) over F_2
  } else {
    if (q % r != 1) throw std::invalid_argument("build_extraspecial_rep: need q = 1 mod r for r-th roots of unity");
    if ((r - 1) % pm != 0 && (r + 1) % pm != 0)
      throw std::invalid_argument("build_extraspecial_rep: unsupported configuration (p^m must divide r - 1 or r + 1)");
    // primitive r-th root of unity in F_q
    std::uint64_t zeta = 0;
    for (std::uint64_t g = 2; g < q && !zeta; ++g) {
      const std::uint64_t z = powmod(g, (q - 1) / r, q);
      if (z != 1) zeta = z;
    }
    const std::size_t n = r;
    MatrixFp X(F, n, n), Y(F, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      X(i, i) = powmod(zeta, i, q);
      Y((i + 1) % n, i) = 1;
    }
    rep.generators = {X, Y};
    auto element = [&](std::uint64_t ea, std::uint64_t eb) { return X.pow(ea) * Y.pow(eb); };
    // first element of SL(2, r) of order p^m, lexicographic in (a, b, c, d)
    std::optional<std::array<std::uint64_t, 4>> A;
    for (std::uint64_t v = 0; v < r * r * r * r && !A; ++v) {
      std::array<std::uint64_t, 4> c{v / (r * r * r), (v / (r * r)) % r, (v / r) % r, v % r};
      if ((c[0] * c[3] + r * r - (c[1] * c[2]) % r) % r != 1) continue;
      if (detail::order2(c, r) == pm) A = c;
    }
    if (!A) throw std::logic_error("build_extraspecial_rep: no element of order p^m in SL(2, r)");
    rep.action = *A;
    // X = (1,0), Y = (0,1); image of (x, y) is X^a Y^b with (a, b) = A (x, y)
    images = {element((*A)[0], (*A)[2]), element((*A)[1], (*A)[3])};
    const MatrixFp comm = X * Y * X.pow(r - 1) * Y.pow(r - 1);
    if (!comm.is_scalar()) throw std::logic_error("build_extraspecial_rep: commutator is not scalar");
    rep.center = comm;
  }

  // relations and faithfulness
  const auto L = enumerate_matrix_group(rep.generators);
  rep.group_order = L.size();
  if (rep.group_order != upow(r, 2 * t + 1)) throw std::logic_error("build_extraspecial_rep: module is not faithful for L");
  if (!rep.center.is_scalar() || rep.center == MatrixFp::identity(F, rep.center.rows()))
    throw std::logic_error("build_extraspecial_rep: center does not act by a nontrivial scalar");

  // eta from X_g eta = eta X_{g^eta}; the solution space is one-dimensional by Schur's lemma
  const auto sols = detail::intertwiners(rep.generators, images);
  if (sols.size() != 1) throw std::logic_error("build_extraspecial_rep: conjugation system does not have a 1-dimensional solution");
  const std::size_t dim = rep.generators[0].rows();
  const MatrixFp eta0(F, dim, dim, sols[0]);
  if (!eta0.invertible()) throw std::logic_error("build_extraspecial_rep: intertwiner is singular");
  // eta0^(p^m) centralizes L, hence is a scalar c; pick lambda minimizing the order of lambda^(p^m) c
  const MatrixFp top = eta0.pow(pm);
  if (!top.is_scalar()) throw std::logic_error("build_extraspecial_rep: eta^(p^m) is not scalar");
  const std::uint64_t c = top(0, 0);
  std::uint64_t best_lambda = 1, best_order = 0;
  for (std::uint64_t lambda = 1; lambda < q; ++lambda) {
    const std::uint64_t mu = F.mul(powmod(lambda, pm, q), c);
    const std::uint64_t ord = mu == 1 ? 1 : numth::multiplicative_order(static_cast<std::int64_t>(mu), q);
    if (best_order == 0 || ord < best_order) {
      best_order = ord;
      best_lambda = lambda;
    }
  }
  rep.eta = eta0.scaled(best_lambda);
  const MatrixFp eta_inv = *rep.eta.inverse();
  for (std::size_t g = 0; g < rep.generators.size(); ++g)
    if (eta_inv * rep.generators[g] * rep.eta != images[g]) throw std::logic_error("build_extraspecial_rep: eta does not realize the automorphism");
  if (rep.eta * rep.center != rep.center * rep.eta) throw std::logic_error("build_extraspecial_rep: eta does not centralize Z(L)");

  // orbits on L/Z(L) \ {1}
  const std::uint64_t rr = r;
  std::vector<bool> seen(rr * rr, false);
  for (std::uint64_t v = 1; v < rr * rr; ++v) {
    if (seen[v]) continue;
    std::uint64_t len = 0;
    std::array<std::uint64_t, 2> x{v / rr, v % rr};
    while (!seen[x[0] * rr + x[1]]) {
      seen[x[0] * rr + x[1]] = true;
      ++len;
      x = detail::act2(rep.action, x, rr);
    }
    rep.orbit_lengths.push_back(len);
  }
  for (auto len : rep.orbit_lengths)
    if (len != pm) throw std::logic_error("build_extraspecial_rep: action is not regular on L/Z(L)");
  return rep;
}

struct EigenvalueBoundVerdict {
  unsigned ell = 0;             // distinct eigenvalues of eta
  unsigned minpoly_degree = 0;
  std::uint64_t bound = 0;      // p^m - 1
  std::vector<std::size_t> multiplicities;  // eigenspace dimensions a_i
  std::uint64_t counting_lhs = 0;  // (r^(2t) - 1) / p^m + 1
  std::uint64_t counting_rhs = 0;  // sum a_i^2
  bool semisimple = false;

  bool holds() const { return ell >= bound && minpoly_degree >= bound && counting_lhs == counting_rhs && semisimple; }
};

inline EigenvalueBoundVerdict verify_eigenvalue_bound(const ExtraspecialRep& rep) {
  EigenvalueBoundVerdict out;
  const auto mp = min_poly(rep.eta);
  out.ell = mp.distinct_eigenvalues;
  out.minpoly_degree = mp.degree;
  out.bound = rep.pm() - 1;
  const auto eig = eigen_decomposition(rep.eta);
  std::size_t total = 0;
  for (const auto& e : eig.eigenvalues) {
    out.multiplicities.push_back(e.eigenspace_dim);
    out.counting_rhs += e.eigenspace_dim * e.eigenspace_dim;
    total += e.eigenspace_dim;
  }
  out.semisimple = total == rep.eta.rows() && eig.eigenvalues.size() == out.ell;
  out.counting_lhs = (detail::upow(rep.r, 2 * rep.t) - 1) / rep.pm() + 1;
  return out;
}

// ---------------------------------------------------------------------------
// Minimal-polynomial lower bound
// ---------------------------------------------------------------------------

struct MinpolyBoundVerdict {
  unsigned degree = 0;
  std::uint64_t bound = 0;  // p^m - p^(m-1)
  std::uint64_t induced_order = 0;
  bool holds() const { return degree >= bound; }
};

/// Checks deg minpoly(psi) >= p^m - p^(m-1) for psi normalizing the r-group R generated by
/// `gens` and inducing an automorphism of order p^m. In the modular case char = p the
/// caller asserts O_p = 1 by passing modular_ok = true.
inline MinpolyBoundVerdict verify_minpoly_lower_bound(const std::vector<MatrixFp>& gens, const MatrixFp& psi, std::uint64_t p, std::uint64_t m,
                                                      bool modular_ok = false) {
  if (m < 1) throw std::invalid_argument("verify_minpoly_lower_bound: m must be at least 1");
  if (!numth::is_prime(p)) throw std::invalid_argument("verify_minpoly_lower_bound: p must be prime");
  const auto R = enumerate_matrix_group(gens);
  const auto primes = numth::prime_divisors(R.size());
  if (primes.size() != 1) throw std::invalid_argument("verify_minpoly_lower_bound: generated group is not an r-group");
  const std::uint64_t r = primes[0];
  const std::uint64_t ch = psi.field().characteristic();
  if (ch == r) throw std::invalid_argument("verify_minpoly_lower_bound: characteristic divides |R|");
  if (ch == p && !modular_ok) throw std::invalid_argument("verify_minpoly_lower_bound: modular case requires O_p = 1 from the caller");
  const auto psi_inv = psi.inverse();
  if (!psi_inv) throw std::invalid_argument("verify_minpoly_lower_bound: psi is singular");
  const std::set<MatrixFp> Rset(R.begin(), R.end());
  for (const auto& g : gens)
    if (!Rset.count(*psi_inv * g * psi)) throw std::invalid_argument("verify_minpoly_lower_bound: psi does not normalize R");
  // order of conjugation by psi on R
  std::uint64_t k = 1;
  MatrixFp pk = psi, pk_inv = *psi_inv;
  while (true) {
    bool trivial = true;
    for (const auto& g : gens) trivial = trivial && pk_inv * g * pk == g;
    if (trivial) break;
    pk = pk * psi;
    pk_inv = pk_inv * *psi_inv;
    if (++k > 100000) throw CapExceeded("verify_minpoly_lower_bound: induced order above cap");
  }
  const std::uint64_t pm = detail::upow(p, m);
  if (k != pm) throw std::invalid_argument("verify_minpoly_lower_bound: induced automorphism order is " + std::to_string(k) + ", not p^m");
  MinpolyBoundVerdict out;
  out.induced_order = k;
  out.degree = min_poly(psi).degree;
  out.bound = pm - pm / p;
  return out;
}

}  // namespace fitlab

#pragma once

// Finite permutation groups with full element enumeration. After construction
// every operation works on element indices; index 0 is the identity.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fitlab/common.hpp"
#include "fitlab/numth.hpp"
#include "fitlab/perm.hpp"

namespace fitlab {

inline constexpr std::size_t kGroupOrderCap = 5000;

/// A subset of the elements of a fixed group, stored as a bitset. Used for subgroups.
class Subgroup {
 public:
  Subgroup() = default;
  explicit Subgroup(std::size_t universe) : bits_((universe + 63) / 64, 0), universe_(universe) {}

  bool contains(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
  void insert(std::size_t i) {
    auto& w = bits_[i >> 6];
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (!(w & m)) {
      w |= m;
      ++order_;
    }
  }
  std::size_t order() const { return order_; }
  std::size_t universe() const { return universe_; }
  bool is_trivial() const { return order_ == 1; }
  bool is_whole() const { return order_ == universe_; }

  std::vector<std::uint32_t> elements() const {
    std::vector<std::uint32_t> out;
    out.reserve(order_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t x = bits_[w];
      while (x) {
        const int b = std::countr_zero(x);
        out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(b)));
        x &= x - 1;
      }
    }
    return out;
  }

  bool subset_of(const Subgroup& o) const {
    for (std::size_t w = 0; w < bits_.size(); ++w)
      if (bits_[w] & ~o.bits_[w]) return false;
    return true;
  }

  friend Subgroup operator&(const Subgroup& a, const Subgroup& b) {
    Subgroup c(a.universe_);
    c.order_ = 0;
    for (std::size_t w = 0; w < a.bits_.size(); ++w) {
      c.bits_[w] = a.bits_[w] & b.bits_[w];
      c.order_ += static_cast<std::size_t>(std::popcount(c.bits_[w]));
    }
    return c;
  }

  bool operator==(const Subgroup& o) const { return order_ == o.order_ && bits_ == o.bits_; }
  /// Orders by size first, then bit pattern; gives a deterministic enumeration order.
  bool operator<(const Subgroup& o) const {
    if (order_ != o.order_) return order_ < o.order_;
    return bits_ < o.bits_;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : bits_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t universe_ = 0;
  std::size_t order_ = 0;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const noexcept { return s.hash(); }
};

class FiniteGroup {
 public:
  static constexpr std::size_t kTableLimit = 2048;

  FiniteGroup(std::size_t degree, std::vector<Perm> generators, std::size_t cap = kGroupOrderCap)
      : degree_(degree), generators_(std::move(generators)) {
    if (degree == 0) throw std::invalid_argument("group: degree must be positive");
    for (const auto& g : generators_) {
      if (g.size() != degree || !perm_is_valid(g))
        throw std::invalid_argument("group: malformed permutation for degree " + std::to_string(degree));
    }
    enumerate(cap);
    build_tables();
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<std::uint32_t>& generator_indices() const { return gen_idx_; }
  const Perm& element(std::size_t i) const { return elements_[i]; }

  std::optional<std::uint32_t> find(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::uint32_t index_of(const Perm& p) const {
    auto r = find(p);
    if (!r) throw std::invalid_argument("group: permutation " + format_cycles(p) + " is not an element");
    return *r;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
    return index_.at(perm_mul(elements_[a], elements_[b]));
  }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint64_t order_of(std::uint32_t a) const { return ord_[a]; }
  std::uint32_t pow(std::uint32_t a, std::int64_t k) const {
    const std::int64_t n = static_cast<std::int64_t>(ord_[a]);
    k %= n;
    if (k < 0) k += n;
    std::uint32_t r = 0, b = a;
    while (k) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
      k >>= 1;
    }
    return r;
  }
  /// g^-1 x g
  std::uint32_t conj(std::uint32_t x, std::uint32_t g) const { return mul(mul(inv_[g], x), g); }
  std::uint32_t commutator(std::uint32_t a, std::uint32_t b) const {
    return mul(mul(inv_[a], inv_[b]), mul(a, b));
  }

  Subgroup whole() const {
    Subgroup s(order());
    for (std::size_t i = 0; i < order(); ++i) s.insert(i);
    return s;
  }
  Subgroup trivial() const {
    Subgroup s(order());
    s.insert(0);
    return s;
  }

 private:
  void enumerate(std::size_t cap) {
    Perm id = perm_identity(degree_);
    elements_.push_back(id);
    index_.emplace(id, 0);
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      for (const auto& g : generators_) {
        Perm y = perm_mul(elements_[k], g);
        if (index_.count(y)) continue;
        if (elements_.size() >= cap)
          throw CapExceeded("group: order exceeds the cap " + std::to_string(cap));
        index_.emplace(y, static_cast<std::uint32_t>(elements_.size()));
        elements_.push_back(std::move(y));
      }
    }
    for (const auto& g : generators_) gen_idx_.push_back(index_.at(g));
  }

  void build_tables() {
    const std::size_t n = order();
    if (n <= kTableLimit) {
      table_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          table_[a * n + b] = index_.at(perm_mul(elements_[a], elements_[b]));
    }
    inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a) inv_[a] = index_.at(perm_inverse(elements_[a]));
    ord_.assign(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
      std::uint64_t k = 1;
      for (std::uint32_t x = a; x != 0; x = mul(x, a)) ++k;
      ord_[a] = k;
    }
  }

  std::size_t degree_;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
  std::vector<std::uint32_t> gen_idx_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint64_t> ord_;
};

inline FiniteGroup build_group(std::size_t degree, std::vector<Perm> generators) {
  return FiniteGroup(degree, std::move(generators));
}

// ---------------------------------------------------------------------------
// Arithmetic helpers on prime sets

using PrimeSet = std::vector<std::uint64_t>;

inline bool is_pi_number(std::uint64_t n, const PrimeSet& pi) {
  for (auto p : pi)
    while (n % p == 0) n /= p;
  return n == 1;
}

inline std::uint64_t pi_part(std::uint64_t n, const PrimeSet& pi) {
  std::uint64_t r = 1;
  for (auto p : pi)
    while (n % p == 0) {
      n /= p;
      r *= p;
    }
  return r;
}

/// Primes dividing n that are not in pi.
inline PrimeSet complement_primes(std::uint64_t n, const PrimeSet& pi) {
  PrimeSet out;
  for (auto p : numth::prime_divisors(n))
    if (std::find(pi.begin(), pi.end(), p) == pi.end()) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup generation

inline Subgroup closure(const FiniteGroup& G, const std::vector<std::uint32_t>& gens) {
  Subgroup H(G.order());
  H.insert(0);
  std::vector<std::uint32_t> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (auto g : gens) {
      const auto y = G.mul(queue[k], g);
      if (!H.contains(y)) {
        H.insert(y);
        queue.push_back(y);
      }
    }
  }
  return H;
}

/// Greedy generating set: scan elements in index order, keep those not yet generated.
inline std::vector<std::uint32_t> small_generators(const FiniteGroup& G, const Subgroup& H) {
  if (H.is_whole()) {
    std::vector<std::uint32_t> out;
    for (auto g : G.generator_indices())
      if (g != 0) out.push_back(g);
    return out;
  }
  std::vector<std::uint32_t> gens;
  Subgroup cur = G.trivial();
  for (auto x : H.elements()) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = closure(G, gens);
    if (cur.order() == H.order()) break;
  }
  return gens;
}

inline Subgroup join(const FiniteGroup& G, const Subgroup& A, const Subgroup& B) {
  if (A.subset_of(B)) return B;
  if (B.subset_of(A)) return A;
  auto gens = small_generators(G, A);
  for (auto b : small_generators(G, B))
    if (!A.contains(b)) gens.push_back(b);
  return closure(G, gens);
}

inline Subgroup cyclic_subgroup(const FiniteGroup& G, std::uint32_t x) { return closure(G, {x}); }

inline Subgroup subgroup_from_elements(const FiniteGroup& G, const std::vector<std::uint32_t>& xs) {
  return closure(G, xs);
}

/// H normal in K (both subgroups of G, H contained in K).
inline bool is_normal_in(const FiniteGroup& G, const Subgroup& H, const Subgroup& K) {
  if (!H.subset_of(K)) return false;
  const auto hg = small_generators(G, H);
  for (auto k : small_generators(G, K))
    for (auto h : hg)
      if (!H.contains(G.conj(h, k))) return false;
  return true;
}

inline bool is_normal(const FiniteGroup& G, const Subgroup& H) { return is_normal_in(G, H, G.whole()); }

/// Smallest subgroup normal in K containing the elements of S (S inside K).
inline Subgroup normal_closure(const FiniteGroup& G, const Subgroup& K, std::vector<std::uint32_t> S) {
  const auto conjugators = small_generators(G, K);
  Subgroup H = closure(G, S);
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (auto c : conjugators) {
      const auto y = G.conj(S[i], c);
      if (!H.contains(y)) {
        S.push_back(y);
        H = closure(G, S);
      }
    }
  }
  return H;
}

inline Subgroup normal_closure(const FiniteGroup& G, const Subgroup& H) {
  return normal_closure(G, G.whole(), small_generators(G, H));
}

/// Largest normal subgroup of G inside H.
inline Subgroup core(const FiniteGroup& G, const Subgroup& H) {
  Subgroup K = H;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto g : G.generator_indices()) {
      Subgroup next(G.order());
      for (auto k : K.elements())
        if (K.contains(G.conj(k, G.inv(g)))) next.insert(k);
      if (!(next == K)) {
        K = next;
        changed = true;
      }
    }
  }
  return K;
}

/// Image of H under conjugation by g.
inline Subgroup conjugate(const FiniteGroup& G, const Subgroup& H, std::uint32_t g) {
  Subgroup out(G.order());
  for (auto h : H.elements()) out.insert(G.conj(h, g));
  return out;
}

inline Subgroup normalizer(const FiniteGroup& G, const Subgroup& H) {
  const auto hg = small_generators(G, H);
  Subgroup out(G.order());
  for (std::uint32_t g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (auto h : hg)
      if (!H.contains(G.conj(h, g))) {
        ok = false;
        break;
      }
    if (ok) out.insert(g);
  }
  return out;
}

inline Subgroup centre(const FiniteGroup& G) {
  Subgroup out(G.order());
  for (std::uint32_t x = 0; x < G.order(); ++x) {
    bool central = true;
    for (auto g : G.generator_indices())
      if (G.mul(x, g) != G.mul(g, x)) {
        central = false;
        break;
      }
    if (central) out.insert(x);
  }
  return out;
}

/// [A, B], computed as the normal closure in <A, B> of commutators of generators.
inline Subgroup commutator_subgroup(const FiniteGroup& G, const Subgroup& A, const Subgroup& B) {
  std::vector<std::uint32_t> S;
  const auto gb = small_generators(G, B);
  for (auto a : small_generators(G, A))
    for (auto b : gb) S.push_back(G.commutator(a, b));
  return normal_closure(G, join(G, A, B), S);
}

inline Subgroup derived_subgroup(const FiniteGroup& G, const Subgroup& H) { return commutator_subgroup(G, H, H); }

inline bool is_abelian(const FiniteGroup& G, const Subgroup& H) {
  const auto g = small_generators(G, H);
  for (auto a : g)
    for (auto b : g)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

/// G = G^(0) > G^(1) > ... until it stabilises.
inline std::vector<Subgroup> derived_series(const FiniteGroup& G) {
  std::vector<Subgroup> out{G.whole()};
  for (;;) {
    Subgroup next = derived_subgroup(G, out.back());
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

inline std::vector<Subgroup> lower_central_series(const FiniteGroup& G, const Subgroup& H) {
  std::vector<Subgroup> out{H};
  for (;;) {
    Subgroup next = commutator_subgroup(G, out.back(), H);
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

inline bool is_soluble(const FiniteGroup& G) { return derived_series(G).back().is_trivial(); }

inline bool is_nilpotent(const FiniteGroup& G, const Subgroup& H) {
  return lower_central_series(G, H).back().is_trivial();
}
inline bool is_nilpotent(const FiniteGroup& G) { return is_nilpotent(G, G.whole()); }

inline bool is_p_element(const FiniteGroup& G, std::uint32_t x, std::uint64_t p) {
  return is_pi_number(G.order_of(x), {p});
}

// ---------------------------------------------------------------------------
// Sylow subgroups, O_pi and the Fitting series

/// A Sylow p-subgroup, grown one normalising p-element at a time.
inline Subgroup sylow(const FiniteGroup& G, std::uint64_t p) {
  const std::uint64_t target = pi_part(G.order(), {p});
  Subgroup P = G.trivial();
  std::vector<std::uint32_t> gens;
  while (P.order() < target) {
    bool grown = false;
    for (std::uint32_t g = 1; g < G.order() && !grown; ++g) {
      if (P.contains(g) || !is_p_element(G, g, p)) continue;
      bool normalises = true;
      for (auto x : gens)
        if (!P.contains(G.conj(x, g))) {
          normalises = false;
          break;
        }
      if (!normalises) continue;
      gens.push_back(g);
      P = closure(G, gens);
      grown = true;
    }
    if (!grown) throw std::logic_error("sylow: no normalising p-element found");
  }
  return P;
}

/// O_p(G) as the core of a Sylow p-subgroup.
inline Subgroup o_p(const FiniteGroup& G, std::uint64_t p) {
  if (G.order() % p != 0) return G.trivial();
  return core(G, sylow(G, p));
}

/// Preimage of O_pi(G/N), for N normal in G. Single pass over elements: a
/// candidate x is kept when the normal closure of M and x stays a pi-group over N.
inline Subgroup o_pi_relative(const FiniteGroup& G, const Subgroup& N, const PrimeSet& pi) {
  if (!is_normal(G, N)) throw std::invalid_argument("o_pi_relative: subgroup is not normal");
  Subgroup M = N;
  const Subgroup whole = G.whole();
  for (std::uint32_t x = 1; x < G.order(); ++x) {
    if (M.contains(x)) continue;
    std::uint64_t k = 1;
    for (std::uint32_t y = x; !N.contains(y); y = G.mul(y, x)) ++k;
    if (!is_pi_number(k, pi)) continue;
    auto gens = small_generators(G, M);
    gens.push_back(x);
    Subgroup K = normal_closure(G, whole, gens);
    if (is_pi_number(K.order() / N.order(), pi)) M = std::move(K);
  }
  return M;
}

inline Subgroup o_pi(const FiniteGroup& G, const PrimeSet& pi) { return o_pi_relative(G, G.trivial(), pi); }

inline Subgroup o_qprime(const FiniteGroup& G, std::uint64_t q) {
  return o_pi(G, complement_primes(G.order(), {q}));
}

inline Subgroup o_qprime_q(const FiniteGroup& G, std::uint64_t q) {
  return o_pi_relative(G, o_qprime(G, q), {q});
}

/// F(G) as the product of the O_p(G).
inline Subgroup fitting_subgroup(const FiniteGroup& G) {
  Subgroup F = G.trivial();
  for (auto p : numth::prime_divisors(G.order())) F = join(G, F, o_p(G, p));
  return F;
}

// ---------------------------------------------------------------------------
// Quotients

struct Quotient {
  FiniteGroup group;
  std::vector<std::uint32_t> projection;  // element of G -> element of G/N
  Subgroup kernel;

  Subgroup image(const Subgroup& H) const {
    Subgroup out(group.order());
    for (auto h : H.elements()) out.insert(projection[h]);
    return out;
  }
  Subgroup preimage(const Subgroup& Hbar) const {
    Subgroup out(projection.size());
    for (std::size_t g = 0; g < projection.size(); ++g)
      if (Hbar.contains(projection[g])) out.insert(g);
    return out;
  }
};

/// G/N acting on right cosets; generator i of the quotient is the image of generator i of G.
inline Quotient quotient(const FiniteGroup& G, const Subgroup& N) {
  if (!is_normal(G, N)) throw std::invalid_argument("quotient: subgroup is not normal");
  const std::size_t n = G.order();
  std::vector<std::uint32_t> coset(n, UINT32_MAX);
  std::vector<std::uint32_t> reps;
  const auto nel = N.elements();
  for (std::uint32_t g = 0; g < n; ++g) {
    if (coset[g] != UINT32_MAX) continue;
    const auto c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(g);
    for (auto x : nel) coset[G.mul(x, g)] = c;
  }
  const std::size_t m = reps.size();
  std::vector<Perm> gens;
  for (auto s : G.generator_indices()) {
    Perm p(m);
    for (std::size_t c = 0; c < m; ++c) p[c] = coset[G.mul(reps[c], s)];
    gens.push_back(std::move(p));
  }
  FiniteGroup Q(m, gens, n + 1);
  std::vector<std::uint32_t> proj(n, UINT32_MAX);
  proj[0] = 0;
  std::vector<std::uint32_t> queue{0};
  const auto& qg = Q.generator_indices();
  const auto& gg = G.generator_indices();
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (std::size_t i = 0; i < gg.size(); ++i) {
      const auto y = G.mul(queue[k], gg[i]);
      if (proj[y] != UINT32_MAX) continue;
      proj[y] = Q.mul(proj[queue[k]], qg[i]);
      queue.push_back(y);
    }
  }
  return {std::move(Q), std::move(proj), N};
}

/// Ascending chain of subgroups, each normal in G when flagged.
struct SubgroupChain {
  std::vector<Subgroup> terms;
  std::vector<bool> normal_in_group;

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }

  bool verify(const FiniteGroup& G) const {
    if (terms.size() != normal_in_group.size()) return false;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (normal_in_group[i] && !is_normal(G, terms[i])) return false;
      if (i > 0) {
        if (!terms[i - 1].subset_of(terms[i]) || terms[i - 1] == terms[i]) return false;
        if (!is_normal_in(G, terms[i - 1], terms[i])) return false;
      }
    }
    return true;
  }
};

struct FittingResult {
  std::size_t height = 0;
  SubgroupChain chain;
};

/// Fitting series 1 = F_0 < F_1 < ... < F_h = G with F_{i+1}/F_i = F(G/F_i).
inline FittingResult fitting_height(const FiniteGroup& G) {
  if (!is_soluble(G)) throw std::domain_error("Fitting height undefined here");
  FittingResult out;
  Subgroup cur = G.trivial();
  out.chain.terms.push_back(cur);
  out.chain.normal_in_group.push_back(true);
  while (!cur.is_whole()) {
    const Quotient Q = quotient(G, cur);
    Subgroup next = Q.preimage(fitting_subgroup(Q.group));
    if (next == cur) throw std::logic_error("fitting_height: series stalled");
    cur = std::move(next);
    out.chain.terms.push_back(cur);
    out.chain.normal_in_group.push_back(true);
  }
  out.height = out.chain.length();
  return out;
}

}  // namespace fitlab

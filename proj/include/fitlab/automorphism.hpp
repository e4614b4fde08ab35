#pragma once

// Automorphisms as full element maps, with right-action composition:
// g^(phi psi) = psi(phi(g)).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fitlab/group.hpp"
#include "fitlab/lattice.hpp"

namespace fitlab {

inline constexpr std::size_t kAutGroupOrderCap = 512;
inline constexpr std::size_t kAutCountCap = 100000;

class Automorphism {
 public:
  /// Extends generator images (element indices, one per generator of G) and
  /// checks that the result is a bijective homomorphism.
  static Automorphism from_generator_images(const FiniteGroup& G, const std::vector<std::uint32_t>& images) {
    const auto& gens = G.generator_indices();
    if (images.size() != gens.size())
      throw std::invalid_argument("automorphism: expected one image per generator");
    const std::size_t n = G.order();
    std::vector<std::uint32_t> map(n, UINT32_MAX);
    map[0] = 0;
    std::vector<std::uint32_t> queue{0};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      const auto x = queue[k];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto y = G.mul(x, gens[i]);
        const auto fy = G.mul(map[x], images[i]);
        if (map[y] == UINT32_MAX) {
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          throw std::invalid_argument("automorphism: generator images do not define a homomorphism");
        }
      }
    }
    std::vector<bool> hit(n, false);
    for (auto v : map) {
      if (hit[v]) throw std::invalid_argument("automorphism: map is not bijective");
      hit[v] = true;
    }
    return Automorphism(std::move(map));
  }

  static Automorphism from_perm_images(const FiniteGroup& G, const std::vector<Perm>& images) {
    std::vector<std::uint32_t> idx;
    for (const auto& p : images) idx.push_back(G.index_of(p));
    return from_generator_images(G, idx);
  }

  static Automorphism identity(const FiniteGroup& G) {
    std::vector<std::uint32_t> map(G.order());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<std::uint32_t>(i);
    return Automorphism(std::move(map));
  }

  /// Conjugation x -> g^-1 x g.
  static Automorphism inner(const FiniteGroup& G, std::uint32_t g) {
    std::vector<std::uint32_t> map(G.order());
    for (std::uint32_t x = 0; x < G.order(); ++x) map[x] = G.conj(x, g);
    return Automorphism(std::move(map));
  }

  std::uint32_t operator()(std::uint32_t g) const { return map_[g]; }
  const std::vector<std::uint32_t>& map() const { return map_; }
  std::size_t group_order() const { return map_.size(); }

  bool is_identity() const {
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] != i) return false;
    return true;
  }

  /// this first, then psi
  Automorphism then(const Automorphism& psi) const {
    std::vector<std::uint32_t> m(map_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = psi.map_[map_[i]];
    return Automorphism(std::move(m));
  }

  Automorphism inverse() const {
    std::vector<std::uint32_t> m(map_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[map_[i]] = static_cast<std::uint32_t>(i);
    return Automorphism(std::move(m));
  }

  Automorphism pow(std::int64_t k) const {
    Automorphism base = k < 0 ? inverse() : *this;
    std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
    std::vector<std::uint32_t> id(map_.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<std::uint32_t>(i);
    Automorphism r(std::move(id));
    while (e) {
      if (e & 1) r = r.then(base);
      base = base.then(base);
      e >>= 1;
    }
    return r;
  }

  /// Order as the lcm of the cycle lengths of the element map.
  std::uint64_t order() const {
    std::vector<bool> seen(map_.size(), false);
    std::uint64_t l = 1;
    for (std::size_t i = 0; i < map_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = map_[j]) {
        seen[j] = true;
        ++len;
      }
      l = lcm_u64(l, len);
    }
    return l;
  }

  bool operator==(const Automorphism& o) const { return map_ == o.map_; }
  bool operator<(const Automorphism& o) const { return map_ < o.map_; }

 private:
  explicit Automorphism(std::vector<std::uint32_t> map) : map_(std::move(map)) {}
  std::vector<std::uint32_t> map_;
};

inline Subgroup image(const Automorphism& phi, const Subgroup& H) {
  Subgroup out(H.universe());
  for (auto h : H.elements()) out.insert(phi(h));
  return out;
}

inline bool is_invariant(const Automorphism& phi, const Subgroup& H) {
  for (auto h : H.elements())
    if (!H.contains(phi(h))) return false;
  return true;
}

/// C_G(phi)
inline Subgroup fixed_points(const FiniteGroup& G, const Automorphism& phi) {
  Subgroup out(G.order());
  for (std::uint32_t g = 0; g < G.order(); ++g)
    if (phi(g) == g) out.insert(g);
  return out;
}

inline bool is_fpf(const FiniteGroup& G, const Automorphism& phi) { return fixed_points(G, phi).order() == 1; }

/// Generating set chosen greedily by largest element order.
inline std::vector<std::uint32_t> large_order_generators(const FiniteGroup& G) {
  std::vector<std::uint32_t> gens;
  Subgroup cur = G.trivial();
  while (!cur.is_whole()) {
    std::uint32_t best = 0;
    for (std::uint32_t x = 1; x < G.order(); ++x)
      if (!cur.contains(x) && (best == 0 || G.order_of(x) > G.order_of(best))) best = x;
    gens.push_back(best);
    cur = closure(G, gens);
  }
  return gens;
}

namespace detail {

// Breadth-first spanning data for <g_1, ..., g_j>, used to test partial
// assignments of generator images.
struct LevelPlan {
  std::vector<std::uint32_t> order;                          // BFS order, starts at identity
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tree;  // (parent, generator) per entry
};

inline LevelPlan plan_level(const FiniteGroup& G, const std::vector<std::uint32_t>& gens, std::size_t j) {
  LevelPlan plan;
  std::vector<bool> seen(G.order(), false);
  seen[0] = true;
  plan.order.push_back(0);
  plan.tree.push_back({0, 0});
  for (std::size_t k = 0; k < plan.order.size(); ++k) {
    for (std::size_t i = 0; i < j; ++i) {
      const auto y = G.mul(plan.order[k], gens[i]);
      if (seen[y]) continue;
      seen[y] = true;
      plan.order.push_back(y);
      plan.tree.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(i)});
    }
  }
  return plan;
}

// Builds the map on <g_1..g_j> and checks it is an injective homomorphism.
inline bool partial_hom(const FiniteGroup& G, const std::vector<std::uint32_t>& gens, const LevelPlan& plan,
                        const std::vector<std::uint32_t>& imgs, std::vector<std::uint32_t>& map,
                        std::vector<std::uint32_t>& stamp, std::uint32_t tick) {
  const std::size_t j = imgs.size();
  map[0] = 0;
  for (std::size_t k = 1; k < plan.order.size(); ++k) {
    const auto [parent, gi] = plan.tree[k];
    map[plan.order[k]] = G.mul(map[plan.order[parent]], imgs[gi]);
  }
  for (auto x : plan.order) {
    if (stamp[map[x]] == tick) return false;
    stamp[map[x]] = tick;
  }
  for (auto x : plan.order)
    for (std::size_t i = 0; i < j; ++i)
      if (map[G.mul(x, gens[i])] != G.mul(map[x], imgs[i])) return false;
  return true;
}

}  // namespace detail

/// All automorphisms of G, sorted by element map.
inline std::vector<Automorphism> automorphism_group(const FiniteGroup& G, std::size_t count_cap = kAutCountCap) {
  if (G.order() > kAutGroupOrderCap)
    throw CapExceeded("automorphism_group: |G| = " + std::to_string(G.order()) + " exceeds the cap " +
                      std::to_string(kAutGroupOrderCap) + "; use canonical mode");
  const auto gens = large_order_generators(G);
  const std::size_t k = gens.size();
  std::vector<detail::LevelPlan> plans;
  for (std::size_t j = 1; j <= k; ++j) plans.push_back(detail::plan_level(G, gens, j));
  std::vector<std::vector<std::uint32_t>> candidates(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::uint32_t x = 1; x < G.order(); ++x)
      if (G.order_of(x) == G.order_of(gens[i])) candidates[i].push_back(x);

  std::vector<Automorphism> out;
  if (k == 0) {
    out.push_back(Automorphism::identity(G));
    return out;
  }
  std::vector<std::uint32_t> imgs;
  std::vector<std::uint32_t> map(G.order(), 0), stamp(G.order(), 0);
  std::uint32_t tick = 0;
  std::vector<std::size_t> pos(k, 0);
  std::size_t depth = 0;
  // iterative depth-first search over generator images
  while (true) {
    if (pos[depth] >= candidates[depth].size()) {
      if (depth == 0) break;
      pos[depth] = 0;
      --depth;
      imgs.pop_back();
      ++pos[depth];
      continue;
    }
    imgs.push_back(candidates[depth][pos[depth]]);
    if (!detail::partial_hom(G, gens, plans[depth], imgs, map, stamp, ++tick)) {
      imgs.pop_back();
      ++pos[depth];
      continue;
    }
    if (depth + 1 == k) {
      // <gens> = G and the map is an injective homomorphism on it
      out.push_back(Automorphism::from_generator_images(G, [&] {
        std::vector<std::uint32_t> gi;
        for (auto g : G.generator_indices()) gi.push_back(map[g]);
        return gi;
      }()));
      if (out.size() > count_cap)
        throw CapExceeded("automorphism_group: more than " + std::to_string(count_cap) +
                          " automorphisms; use canonical mode");
      imgs.pop_back();
      ++pos[depth];
      continue;
    }
    ++depth;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The automorphism of G/N induced by phi; N must be phi-invariant.
inline Automorphism induced_automorphism(const FiniteGroup& G, const Automorphism& phi, const Quotient& Q) {
  if (!is_invariant(phi, Q.kernel)) throw std::invalid_argument("induced_automorphism: kernel is not invariant");
  std::vector<std::uint32_t> qmap(Q.group.order(), UINT32_MAX);
  for (std::uint32_t g = 0; g < G.order(); ++g) {
    const auto a = Q.projection[g], b = Q.projection[phi(g)];
    if (qmap[a] == UINT32_MAX) qmap[a] = b;
    else if (qmap[a] != b) throw std::logic_error("induced_automorphism: map not well defined");
  }
  std::vector<std::uint32_t> images;
  for (auto s : Q.group.generator_indices()) images.push_back(qmap[s]);
  Automorphism out = Automorphism::from_generator_images(Q.group, images);
  if (is_fpf(G, phi) && !is_fpf(Q.group, out))
    throw TheoremViolation("induced_automorphism: fixed-point-free map induced a map with fixed points");
  return out;
}

/// A phi-invariant Hall pi-subgroup, by search over the lattice.
inline Subgroup invariant_hall(const FiniteGroup& G, const Automorphism& phi, const PrimeSet& pi,
                               const SubgroupLattice& L) {
  const auto n = pi_part(G.order(), pi);
  for (const auto& s : L.subgroups)
    if (s.order() == n && is_invariant(phi, s)) return s;
  const bool guaranteed = is_fpf(G, phi) || gcd_u64(phi.order(), G.order()) == 1;
  if (guaranteed && is_soluble(G))
    throw TheoremViolation("invariant_hall: no invariant Hall subgroup although one must exist");
  throw std::domain_error("invariant_hall: no invariant Hall subgroup");
}

inline Subgroup invariant_hall(const FiniteGroup& G, const Automorphism& phi, const PrimeSet& pi) {
  return invariant_hall(G, phi, pi, subgroup_lattice(G));
}

struct CoprimeActionVerdict {
  bool skipped = false;
  bool holds = false;
  std::size_t lhs_order = 0;  // |C_{G/N}(phi)|
  std::size_t rhs_order = 0;  // |C_G(phi) N / N|
  std::string notice;
};

/// Compares C_{G/N}(phi) with the image of C_G(phi) for coprime phi.
inline CoprimeActionVerdict coprime_action_check(const FiniteGroup& G, const Automorphism& phi, const Subgroup& N) {
  CoprimeActionVerdict v;
  if (gcd_u64(phi.order(), G.order()) != 1) {
    v.skipped = true;
    v.notice = "not coprime: gcd(|phi|, |G|) = " + std::to_string(gcd_u64(phi.order(), G.order()));
    return v;
  }
  const Quotient Q = quotient(G, N);
  const Automorphism bar = induced_automorphism(G, phi, Q);
  const Subgroup lhs = fixed_points(Q.group, bar);
  const Subgroup rhs = Q.image(fixed_points(G, phi));
  v.lhs_order = lhs.order();
  v.rhs_order = rhs.order();
  v.holds = lhs == rhs;
  return v;
}

}  // namespace fitlab

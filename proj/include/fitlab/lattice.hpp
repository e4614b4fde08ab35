#pragma once

// Full subgroup lattice by repeatedly joining known subgroups with cyclic
// subgroups of prime-power order, plus the searches built on it.

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "fitlab/group.hpp"

namespace fitlab {

inline constexpr std::size_t kLatticeCap = 20000;

struct SubgroupLattice {
  std::vector<Subgroup> subgroups;  // sorted by Subgroup::operator<

  std::vector<Subgroup> of_order(std::size_t n) const {
    std::vector<Subgroup> out;
    for (const auto& s : subgroups)
      if (s.order() == n) out.push_back(s);
    return out;
  }
};

inline SubgroupLattice subgroup_lattice(const FiniteGroup& G, std::size_t cap = kLatticeCap) {
  // one generator per cyclic subgroup of prime-power order
  std::vector<std::uint32_t> cyclic_gens;
  {
    std::unordered_set<Subgroup, SubgroupHash> seen;
    for (std::uint32_t x = 1; x < G.order(); ++x) {
      if (numth::prime_divisors(G.order_of(x)).size() != 1) continue;
      if (seen.insert(cyclic_subgroup(G, x)).second) cyclic_gens.push_back(x);
    }
  }
  std::unordered_set<Subgroup, SubgroupHash> found;
  std::vector<Subgroup> queue{G.trivial()};
  std::vector<std::vector<std::uint32_t>> queue_gens{{}};
  found.insert(queue[0]);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (auto x : cyclic_gens) {
      if (queue[k].contains(x)) continue;
      auto gens = queue_gens[k];
      gens.push_back(x);
      Subgroup H = closure(G, gens);
      if (!found.insert(H).second) continue;
      if (found.size() > cap)
        throw CapExceeded("subgroup_lattice: more than " + std::to_string(cap) + " subgroups");
      queue.push_back(std::move(H));
      queue_gens.push_back(std::move(gens));
    }
  }
  SubgroupLattice out{std::move(queue)};
  std::sort(out.subgroups.begin(), out.subgroups.end());
  return out;
}

inline std::vector<Subgroup> normal_subgroups(const FiniteGroup& G, const SubgroupLattice& L) {
  std::vector<Subgroup> out;
  for (const auto& s : L.subgroups)
    if (is_normal(G, s)) out.push_back(s);
  return out;
}

inline std::vector<Subgroup> maximal_subgroups(const SubgroupLattice& L) {
  std::vector<Subgroup> out;
  const std::size_t n = L.subgroups.back().order();
  for (std::size_t i = 0; i < L.subgroups.size(); ++i) {
    const auto& M = L.subgroups[i];
    if (M.order() == n) continue;
    bool maximal = true;
    for (std::size_t j = i + 1; j < L.subgroups.size() && maximal; ++j) {
      const auto& K = L.subgroups[j];
      if (K.order() > M.order() && K.order() < n && M.subset_of(K)) maximal = false;
    }
    if (maximal) out.push_back(M);
  }
  return out;
}

/// Intersection of all maximal subgroups.
inline Subgroup frattini(const FiniteGroup& G, const SubgroupLattice& L) {
  Subgroup out = G.whole();
  for (const auto& M : maximal_subgroups(L)) out = out & M;
  return out;
}

inline Subgroup frattini(const FiniteGroup& G) { return frattini(G, subgroup_lattice(G)); }

/// A Hall pi-subgroup found by search over the lattice.
inline Subgroup hall_subgroup(const FiniteGroup& G, const PrimeSet& pi, const SubgroupLattice& L) {
  const auto n = pi_part(G.order(), pi);
  for (const auto& s : L.subgroups)
    if (s.order() == n) return s;
  if (is_soluble(G)) throw TheoremViolation("hall_subgroup: soluble group without a Hall subgroup");
  throw std::domain_error("hall_subgroup: no Hall subgroup in an insoluble group");
}

inline Subgroup hall_subgroup(const FiniteGroup& G, const PrimeSet& pi) {
  return hall_subgroup(G, pi, subgroup_lattice(G));
}

}  // namespace fitlab

#pragma once

// Independent group oracle for tests: element sets of raw permutations, no
// indexing, no Sylow theory.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "fitlab/builtins.hpp"
#include "fitlab/group.hpp"

namespace fitlab_test {

using namespace fitlab;

using PermSet = std::set<Perm>;

inline PermSet naive_closure(const std::vector<Perm>& gens, std::size_t degree) {
  PermSet out{perm_identity(degree)};
  std::vector<Perm> frontier(out.begin(), out.end());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = perm_mul(x, g);
        if (out.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return out;
}

inline PermSet naive_closure(const PermSet& s, std::size_t degree) {
  return naive_closure(std::vector<Perm>(s.begin(), s.end()), degree);
}

inline Perm comm(const Perm& a, const Perm& b) {
  return perm_mul(perm_mul(perm_inverse(a), perm_inverse(b)), perm_mul(a, b));
}

struct Naive {
  std::size_t degree;
  PermSet G;
  std::vector<PermSet> normals;  // every normal subgroup

  explicit Naive(const GroupSpec& s) : degree(s.degree), G(naive_closure(s.gens, s.degree)) {
    // conjugacy classes
    std::vector<PermSet> classes;
    PermSet done;
    for (const auto& x : G) {
      if (done.count(x)) continue;
      PermSet cls;
      for (const auto& g : G) cls.insert(perm_mul(perm_mul(perm_inverse(g), x), g));
      done.insert(cls.begin(), cls.end());
      if (!perm_is_identity(x)) classes.push_back(cls);
    }
    // every union of classes (with 1) closed under products
    const std::size_t c = classes.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
      PermSet S{perm_identity(degree)};
      for (std::size_t i = 0; i < c; ++i)
        if (mask >> i & 1) S.insert(classes[i].begin(), classes[i].end());
      if (G.size() % S.size() != 0) continue;
      bool closed = true;
      for (auto a = S.begin(); a != S.end() && closed; ++a)
        for (auto b = S.begin(); b != S.end() && closed; ++b)
          if (!S.count(perm_mul(*a, *b))) closed = false;
      if (closed) normals.push_back(S);
    }
  }

  // <[x, k] : x in X, k in K> * F
  PermSet bracket_mod(const PermSet& X, const PermSet& K, const PermSet& F) const {
    PermSet s(F.begin(), F.end());
    for (const auto& x : X)
      for (const auto& k : K) s.insert(comm(x, k));
    return naive_closure(s, degree);
  }

  bool nilpotent_over(const PermSet& K, const PermSet& F) const {
    PermSet X = K;
    for (;;) {
      PermSet next = bracket_mod(X, K, F);
      if (next.size() == F.size()) return true;
      if (next == X) return false;
      X = std::move(next);
    }
  }

  static bool contains_all(const PermSet& big, const PermSet& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  }

  // Fitting height: repeatedly take the largest normal K over F with K/F nilpotent.
  std::size_t fitting_height() const {
    PermSet F{perm_identity(degree)};
    std::size_t h = 0;
    while (F.size() < G.size()) {
      const PermSet* best = nullptr;
      for (const auto& K : normals)
        if (contains_all(K, F) && nilpotent_over(K, F) && (!best || K.size() > best->size())) best = &K;
      if (!best || best->size() == F.size()) return SIZE_MAX;
      F = *best;
      ++h;
    }
    return h;
  }

  PermSet largest_normal_pi(const PrimeSet& pi) const {
    const PermSet* best = nullptr;
    for (const auto& K : normals)
      if (is_pi_number(K.size(), pi) && (!best || K.size() > best->size())) best = &K;
    return *best;
  }
};

inline PermSet as_perms(const FiniteGroup& G, const Subgroup& H) {
  PermSet out;
  for (auto h : H.elements()) out.insert(G.element(h));
  return out;
}

// All bijections fixing the identity that respect multiplication.
inline std::size_t naive_aut_count(const GroupSpec& s) {
  std::vector<Perm> el;
  for (const auto& x : naive_closure(s.gens, s.degree)) el.push_back(x);
  const std::size_t n = el.size();
  auto idx = [&](const Perm& p) {
    return static_cast<std::size_t>(std::lower_bound(el.begin(), el.end(), p) - el.begin());
  };
  std::vector<std::vector<std::size_t>> mt(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mt[a][b] = idx(perm_mul(el[a], el[b]));
  const std::size_t e = idx(perm_identity(s.degree));
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (i != e) rest.push_back(i);
  std::vector<std::size_t> img = rest;
  std::size_t count = 0;
  do {
    std::vector<std::size_t> f(n);
    f[e] = e;
    for (std::size_t i = 0; i < rest.size(); ++i) f[rest[i]] = img[i];
    bool hom = true;
    for (std::size_t a = 0; a < n && hom; ++a)
      for (std::size_t b = 0; b < n && hom; ++b)
        if (f[mt[a][b]] != mt[f[a]][f[b]]) hom = false;
    count += hom;
  } while (std::next_permutation(img.begin(), img.end()));
  return count;
}

}  // namespace fitlab_test

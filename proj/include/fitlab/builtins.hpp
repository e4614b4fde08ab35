#pragma once

// Builtin permutation groups and the group definition file format:
//
//   degree: 7
//   gen: (1 2 3 4 5 6 7)
//   auto: (1 3 5 7 2 4 6)
//
// `auto:` lines give the image of each generator, in `gen:` order.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fitlab/automorphism.hpp"
#include "fitlab/group.hpp"
#include "fitlab/numth.hpp"
#include "fitlab/perm.hpp"

namespace fitlab {

struct GroupSpec {
  std::size_t degree = 1;
  std::vector<Perm> gens;

  FiniteGroup build(std::size_t cap = kGroupOrderCap) const { return FiniteGroup(degree, gens, cap); }
};

inline GroupSpec cyclic_group(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic_group: n must be positive");
  Perm g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<std::uint32_t>((i + 1) % n);
  return {n, {g}};
}

inline GroupSpec symmetric_group(std::size_t n) {
  if (n == 0) throw std::invalid_argument("symmetric_group: n must be positive");
  GroupSpec s = cyclic_group(n);
  if (n >= 2) {
    Perm t = perm_identity(n);
    std::swap(t[0], t[1]);
    s.gens.push_back(t);
  }
  return s;
}

inline GroupSpec dihedral_group(std::size_t n) {
  if (n < 3) throw std::invalid_argument("dihedral_group: n must be at least 3");
  GroupSpec s = cyclic_group(n);
  Perm r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>((n - i) % n);
  s.gens.push_back(r);
  return s;
}

inline GroupSpec quaternion_group() {
  return {8, {parse_cycles("(1 2 3 4)(5 6 7 8)", 8), parse_cycles("(1 5 3 7)(2 8 4 6)", 8)}};
}

/// Generators of A followed by generators of B, acting on disjoint point sets.
inline GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b) {
  GroupSpec out{a.degree + b.degree, {}};
  for (const auto& g : a.gens) {
    Perm p = perm_identity(out.degree);
    for (std::size_t i = 0; i < a.degree; ++i) p[i] = g[i];
    out.gens.push_back(p);
  }
  for (const auto& g : b.gens) {
    Perm p = perm_identity(out.degree);
    for (std::size_t i = 0; i < b.degree; ++i) p[a.degree + i] = static_cast<std::uint32_t>(a.degree + g[i]);
    out.gens.push_back(p);
  }
  return out;
}

/// Direct product of cyclic groups of the given orders.
inline GroupSpec abelian_group(const std::vector<std::size_t>& orders) {
  if (orders.empty()) throw std::invalid_argument("abelian_group: need at least one factor");
  GroupSpec out = cyclic_group(orders[0]);
  for (std::size_t i = 1; i < orders.size(); ++i) out = direct_product(out, cyclic_group(orders[i]));
  return out;
}

/// Affine group generated by the translations of F_p^n and the given linear maps
/// (row-major n x n integer matrices acting on column vectors), on p^n points.
inline GroupSpec affine_group(std::uint64_t p, std::size_t n, const std::vector<std::vector<std::int64_t>>& linear) {
  if (!numth::is_prime(p)) throw std::invalid_argument("affine_group: p must be prime");
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= p;
  auto decode = [&](std::size_t x) {
    std::vector<std::uint64_t> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = x % p;
      x /= p;
    }
    return v;
  };
  auto encode = [&](const std::vector<std::uint64_t>& v) {
    std::size_t x = 0;
    for (std::size_t i = n; i-- > 0;) x = x * p + v[i];
    return x;
  };
  GroupSpec out{size, {}};
  for (std::size_t k = 0; k < n; ++k) {
    Perm t(size);
    for (std::size_t x = 0; x < size; ++x) {
      auto v = decode(x);
      v[k] = (v[k] + 1) % p;
      t[x] = static_cast<std::uint32_t>(encode(v));
    }
    out.gens.push_back(t);
  }
  for (const auto& M : linear) {
    if (M.size() != n * n) throw std::invalid_argument("affine_group: matrix has the wrong size");
    Perm t(size);
    for (std::size_t x = 0; x < size; ++x) {
      const auto v = decode(x);
      std::vector<std::uint64_t> w(n, 0);
      for (std::size_t r = 0; r < n; ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < n; ++c) acc += M[r * n + c] * static_cast<std::int64_t>(v[c]);
        acc %= static_cast<std::int64_t>(p);
        if (acc < 0) acc += static_cast<std::int64_t>(p);
        w[r] = static_cast<std::uint64_t>(acc);
      }
      t[x] = static_cast<std::uint32_t>(encode(w));
    }
    if (!perm_is_valid(t)) throw std::invalid_argument("affine_group: singular matrix");
    out.gens.push_back(t);
  }
  return out;
}

/// C_q x| C_r as x -> x + 1 and x -> k x on Z_q, k of order r mod q.
inline GroupSpec semidirect_cyclic(std::uint64_t q, std::uint64_t r) {
  if (!numth::is_prime(q) || r == 0 || (q - 1) % r != 0)
    throw std::invalid_argument("semidirect_cyclic: need q prime and r | q - 1");
  std::uint64_t k = 1;
  for (std::uint64_t a = 1; a < q; ++a)
    if (numth::multiplicative_order(static_cast<std::int64_t>(a), q) == r) {
      k = a;
      break;
    }
  return affine_group(q, 1, {{static_cast<std::int64_t>(k)}});
}

/// C_5^2 x| C_3: F_25 with a multiplier of order 3 (companion of x^2 + x + 1 over F_5).
inline GroupSpec frobenius_75() { return affine_group(5, 2, {{0, -1, 1, -1}}); }

/// C_7^2 x| C_3 with the diagonal action diag(2, 4).
inline GroupSpec frobenius_147() { return affine_group(7, 2, {{2, 0, 0, 4}}); }

/// C_2^4 x| C_5: F_16 with a multiplier of order 5 (companion of x^4 + x^3 + x^2 + x + 1 over F_2).
inline GroupSpec frobenius_80() {
  return affine_group(2, 4, {{0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1}});
}

/// Power map g -> g^k on a cyclic group built by cyclic_group.
inline Automorphism power_automorphism(const FiniteGroup& G, std::int64_t k) {
  std::vector<std::uint32_t> images;
  for (auto g : G.generator_indices()) images.push_back(G.pow(g, k));
  return Automorphism::from_generator_images(G, images);
}

// ---------------------------------------------------------------------------
// Group definition files

struct GroupFile {
  GroupSpec spec;
  std::vector<Perm> auto_images;  // empty when no `auto:` lines
};

inline GroupFile parse_group_file(const std::string& text) {
  GroupFile out;
  std::optional<std::size_t> degree;
  std::vector<std::string> gen_text, auto_text;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("group file line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = line.substr(0, colon);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    const std::string value = line.substr(colon + 1);
    if (key == "degree") {
      try {
        std::size_t used = 0;
        const auto d = std::stoull(value, &used);
        if (value.find_first_not_of(" \t\r", used) != std::string::npos || d == 0) throw std::invalid_argument("");
        degree = d;
      } catch (const std::exception&) {
        throw std::invalid_argument("group file line " + std::to_string(lineno) + ": bad degree");
      }
    } else if (key == "gen") {
      gen_text.push_back(value);
    } else if (key == "auto") {
      auto_text.push_back(value);
    } else {
      throw std::invalid_argument("group file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!degree) throw std::invalid_argument("group file: missing 'degree:' line");
  out.spec.degree = *degree;
  for (const auto& g : gen_text) out.spec.gens.push_back(parse_cycles(g, *degree));
  for (const auto& g : auto_text) out.auto_images.push_back(parse_cycles(g, *degree));
  if (!out.auto_images.empty() && out.auto_images.size() != out.spec.gens.size())
    throw std::invalid_argument("group file: need one 'auto:' line per 'gen:' line");
  return out;
}

inline GroupFile load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_file(ss.str());
}

}  // namespace fitlab

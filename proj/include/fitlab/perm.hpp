#pragma once

// Permutations on {0, ..., n-1} stored as image vectors. The product a*b
// applies a first, then b. Text I/O uses 1-based cycle notation.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fitlab {

using Perm = std::vector<std::uint32_t>;

inline Perm perm_identity(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

inline Perm perm_inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<std::uint32_t>(i);
  return c;
}

inline bool perm_is_valid(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Parses "(1 2 3)(4 5)" on `degree` points. "()" and "" are the identity.
inline Perm parse_cycles(std::string_view text, std::size_t degree) {
  Perm p = perm_identity(degree);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("malformed permutation '" + std::string(text) + "': " + why);
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip_ws();
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("unexpected character");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > degree) fail("point out of range");
        ++i;
      }
      if (v == 0 || v > degree) fail("point out of range");
      if (used[v - 1]) fail("repeated point");
      used[v - 1] = true;
      cycle.push_back(static_cast<std::uint32_t>(v - 1));
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) p[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_ws();
  }
  return p;
}

inline std::string format_cycles(const Perm& p) {
  std::ostringstream os;
  std::vector<bool> seen(p.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
      j = p[j];
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

}  // namespace fitlab

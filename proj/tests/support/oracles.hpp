#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "permucoh/term.hpp"

namespace testsupport {

// Ordered Bell numbers by the binomial recurrence a(n) = sum C(n,k) a(n-k).
inline std::uint64_t fubini(std::size_t n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;
    for (std::size_t k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

// Every ordered partition of the first n letters, from all surjections onto
// block positions.
inline std::set<std::string> brute_force_facets(std::size_t n) {
  std::set<std::string> out;
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::size_t> f(n, 0);
    for (;;) {
      std::vector<std::string> blocks(m);
      for (std::size_t i = 0; i < n; ++i) blocks[f[i]] += static_cast<char>('A' + i);
      if (std::none_of(blocks.begin(), blocks.end(), [](const std::string& b) { return b.empty(); })) {
        std::string s;
        for (const std::string& b : blocks) s += "[" + b + "]";
        out.insert(s);
      }
      std::size_t i = 0;
      while (i < n && ++f[i] == m) f[i++] = 0;
      if (i == n) break;
    }
  }
  return out;
}

// Leaves of a binary μ-application tree, left to right.
inline void fringe(const permucoh::Term& t, std::vector<std::string>& out) {
  using permucoh::TermKind;
  if (t.is(TermKind::App) && t.fun().is(TermKind::App) && t.fun().fun().is(TermKind::Atom) &&
      t.fun().fun().name() == "μ") {
    fringe(t.fun().arg(), out);
    fringe(t.arg(), out);
    return;
  }
  out.push_back(t.is(TermKind::Atom) ? t.name() : "?");
}

inline std::string fringe_word(const permucoh::Term& t) {
  std::vector<std::string> leaves;
  fringe(t, leaves);
  std::string s;
  for (std::size_t i = 0; i < leaves.size(); ++i) s += (i ? "·" : "") + leaves[i];
  return s;
}

// All nonempty proper subsets of the first n letters, as ascending names.
inline std::set<std::string> proper_subsets(std::size_t n) {
  std::set<std::string> out;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::string s;
    for (std::size_t b = 0; b < n; ++b)
      if (mask & (1u << b)) s += static_cast<char>('A' + b);
    out.insert(s);
  }
  return out;
}

}  // namespace testsupport

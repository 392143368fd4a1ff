#pragma once

// Small graph builders and brute-force oracles shared by the test suites.
// The oracles deliberately avoid the library's own helpers.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bwembed/graph.hpp"

namespace bwtest {

using bwembed::Edge;
using bwembed::Graph;

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

inline Graph path(int n) {
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

inline Graph cycle(int n) {
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v) e.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
  return Graph(n, e);
}

inline Graph edgeless(int n) { return Graph(n, {}); }

// Vertex-disjoint union, b shifted after a.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  auto e = a.edges();
  for (auto [u, v] : b.edges()) e.emplace_back(u + a.n(), v + a.n());
  return Graph(a.n() + b.n(), e);
}

inline bool adjacent(const Graph& g, int u, int v) {
  const auto& nb = g.neighbors(u);
  return std::find(nb.begin(), nb.end(), v) != nb.end();
}

// |RN_nu(S)| with the threshold written as count * den >= num * n.
inline int rn_size(const Graph& g, std::uint64_t mask, std::int64_t nu_num, std::int64_t nu_den) {
  int count = 0;
  for (int v = 0; v < g.n(); ++v) {
    int in_s = 0;
    for (int u : g.neighbors(v)) in_s += (mask >> u) & 1u;
    if (static_cast<std::int64_t>(in_s) * nu_den >= nu_num * g.n()) ++count;
  }
  return count;
}

// Exhaustive robust-expansion oracle over bitmasks; nu = nu_num/nu_den and
// tau = tau_num/tau_den.
inline bool expander_oracle(const Graph& g, std::int64_t nu_num, std::int64_t nu_den, std::int64_t tau_num,
                            std::int64_t tau_den) {
  const int n = g.n();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const std::int64_t s = __builtin_popcountll(mask);
    // tau n <= |S| <= (1 - tau) n
    if (s * tau_den < tau_num * n || s * tau_den > (tau_den - tau_num) * n) continue;
    // |RN| >= |S| + nu n
    if (static_cast<std::int64_t>(rn_size(g, mask, nu_num, nu_den)) * nu_den < s * nu_den + nu_num * n) return false;
  }
  return true;
}

// Exhaustive (eps, d)-regularity oracle with eps = e_num/e_den and d =
// d_num/d_den. a, b are vertex lists of size <= 10.
inline bool regular_oracle(const Graph& g, const std::vector<int>& a, const std::vector<int>& b, std::int64_t e_num,
                           std::int64_t e_den, std::int64_t d_num, std::int64_t d_den) {
  const std::int64_t na = static_cast<std::int64_t>(a.size()), nb = static_cast<std::int64_t>(b.size());
  std::int64_t total = 0;
  for (int x : a)
    for (int y : b) total += adjacent(g, x, y);
  // density >= d
  if (total * d_den < d_num * na * nb) return false;
  for (std::uint64_t ma = 1; ma < (std::uint64_t{1} << na); ++ma) {
    const std::int64_t sa = __builtin_popcountll(ma);
    if (sa * e_den < e_num * na) continue;
    for (std::uint64_t mb = 1; mb < (std::uint64_t{1} << nb); ++mb) {
      const std::int64_t sb = __builtin_popcountll(mb);
      if (sb * e_den < e_num * nb) continue;
      std::int64_t e = 0;
      for (int i = 0; i < na; ++i)
        if ((ma >> i) & 1u)
          for (int j = 0; j < nb; ++j)
            if ((mb >> j) & 1u) e += adjacent(g, a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
      // |total/(na nb) - e/(sa sb)| >= eps, cross-multiplied
      const std::int64_t lhs = std::abs(total * sa * sb - e * na * nb) * e_den;
      if (lhs >= e_num * na * nb * sa * sb) return false;
    }
  }
  return true;
}

}  // namespace bwtest

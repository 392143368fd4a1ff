#include "bwembed/shifted_walks.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "bwembed/common.hpp"

namespace bwembed {

Matching::Matching(const Graph& g, const std::vector<Edge>& pairs) : partner_(static_cast<std::size_t>(g.n()), -1) {
  for (auto [u, v] : pairs) {
    if (!g.has_edge(u, v))
      fail(ErrorKind::invalid_input, "matching pair (" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    if (partner_[static_cast<std::size_t>(u)] >= 0 || partner_[static_cast<std::size_t>(v)] >= 0)
      fail(ErrorKind::invalid_input, "matching pair (" + std::to_string(u) + "," + std::to_string(v) + ") shares a vertex with another pair");
    partner_[static_cast<std::size_t>(u)] = v;
    partner_[static_cast<std::size_t>(v)] = u;
    pairs_.emplace_back(std::min(u, v), std::max(u, v));
  }
}

bool Matching::is_perfect() const {
  return std::all_of(partner_.begin(), partner_.end(), [](int p) { return p >= 0; });
}

namespace {

void require_perfect(const Graph& g, const Matching& m) {
  if (m.n() != g.n()) fail(ErrorKind::invalid_input, "matching was built for a different graph");
  if (!m.is_perfect()) fail(ErrorKind::invalid_input, "matching is not perfect");
}

std::string step_name(std::size_t i, const Walk& w) {
  return "step at positions " + std::to_string(i + 1) + "," + std::to_string(i + 2) + " (" + std::to_string(w[i]) + "->" +
         std::to_string(w[i + 1]) + ")";
}

}  // namespace

void validate_shifted_walk(const Graph& g, const Matching& m, const Walk& w) {
  require_perfect(g, m);
  if (w.size() < 2 || w.size() % 2 != 0)
    fail(ErrorKind::validation, "walk must have positive even length, got " + std::to_string(w.size()) + " vertices");
  for (int v : w)
    if (v < 0 || v >= g.n()) fail(ErrorKind::validation, "walk visits vertex " + std::to_string(v) + " outside the graph");
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const int u = w[i], v = w[i + 1];
    if (i % 2 == 0) {
      if (!g.has_edge(u, v)) fail(ErrorKind::validation, step_name(i, w) + " is not an edge");
      if (m.contains(u, v)) fail(ErrorKind::validation, step_name(i, w) + " uses a matching edge");
    } else if (!m.contains(u, v)) {
      fail(ErrorKind::validation, step_name(i, w) + " is not a matching edge");
    }
  }
}

bool is_shifted_walk(const Graph& g, const Matching& m, const Walk& w) {
  try {
    validate_shifted_walk(g, m, w);
    return true;
  } catch (const Error&) {
    return false;
  }
}

int max_matching_edge_uses(const Matching& m, const Walk& w) {
  std::map<int, int> uses;
  int best = 0;
  for (std::size_t j = 1; j + 1 < w.size(); j += 2) {
    if (!m.contains(w[j], w[j + 1])) continue;
    best = std::max(best, ++uses[std::min(w[j], w[j + 1])]);
  }
  return best;
}

Walk simplify_walk(const Graph& g, const Matching& m, const Walk& w0) {
  validate_shifted_walk(g, m, w0);
  Walk w = w0;
  for (;;) {
    std::map<int, std::vector<std::size_t>> seen;
    std::vector<std::size_t> triple;
    for (std::size_t j = 1; j + 1 < w.size(); j += 2) {
      auto& pos = seen[std::min(w[j], w[j + 1])];
      pos.push_back(j);
      if (pos.size() == 3) {
        triple = pos;
        break;
      }
    }
    if (triple.empty()) return w;
    // Two of the three traversals enter the edge at the same end.
    std::size_t a = 0, b = 0;
    if (w[triple[0]] == w[triple[1]]) { a = triple[0]; b = triple[1]; }
    else if (w[triple[0]] == w[triple[2]]) { a = triple[0]; b = triple[2]; }
    else { a = triple[1]; b = triple[2]; }
    Walk next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(a) + 1);
    next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(b) + 1, w.end());
    w = std::move(next);
  }
}

Walk purify_walk(const Matching& m, std::span<const int> a, const Walk& w) {
  if (w.size() < 2 || w.size() % 2 != 0) fail(ErrorKind::validation, "walk must have positive even length");
  std::vector<char> in_a(static_cast<std::size_t>(m.n()), 0);
  for (int v : a) {
    if (v < 0 || v >= m.n()) fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " is not in the graph");
    in_a[static_cast<std::size_t>(v)] = 1;
  }
  for (int v : a) {
    int p = m.partner(v);
    if (p >= 0 && in_a[static_cast<std::size_t>(p)])
      fail(ErrorKind::invalid_input, "set contains both ends of matching edge (" + std::to_string(std::min(v, p)) + "," +
                                         std::to_string(std::max(v, p)) + ")");
  }
  auto in = [&](int v) { return v >= 0 && v < m.n() && in_a[static_cast<std::size_t>(v)]; };
  if (!in(w.front()) || !in(w.back())) fail(ErrorKind::invalid_input, "walk endpoints must lie in the set");
  const std::size_t len = w.size() / 2;
  std::size_t i1 = 0;
  for (std::size_t i = 1; i <= len; ++i)
    if (in(w[2 * i - 1])) { i1 = i; break; }
  std::size_t i2 = 1;
  for (std::size_t i = i1; i >= 1; --i)
    if (in(w[2 * i - 2])) { i2 = i; break; }
  return Walk(w.begin() + static_cast<std::ptrdiff_t>(2 * i2 - 2), w.begin() + static_cast<std::ptrdiff_t>(2 * i1));
}

VertexSet shifted_neighborhood(const Graph& g, const Matching& m, std::span<const int> a) {
  std::vector<int> out;
  for (int v : neighborhood(g, a))
    if (m.partner(v) >= 0) out.push_back(m.partner(v));
  return normalize_set(std::move(out), g.n());
}

VertexSet shifted_neighborhood_iterate(const Graph& g, const Matching& m, std::span<const int> a, int r) {
  if (r < 0) fail(ErrorKind::invalid_input, "iterate count must be non-negative");
  VertexSet cur = normalize_set(std::vector<int>(a.begin(), a.end()), g.n());
  for (int i = 0; i < r; ++i) cur = shifted_neighborhood(g, m, cur);
  return cur;
}

ClosedWalkResult find_closed_shifted_walk(const Graph& g, const Matching& m, int a, double nu_d) {
  require_perfect(g, m);
  if (a < 0 || a >= g.n()) fail(ErrorKind::invalid_input, "start vertex " + std::to_string(a) + " is not in the graph");
  const Fraction nu = Fraction::from_double(nu_d);
  ClosedWalkResult res;
  res.bound = nu.num == 0 ? g.n() * 2 + 2 : static_cast<int>(3 * nu.den / nu.num);

  const int n = g.n();
  // dist_state: vertex occupying an odd (1-based) position; dist_end: even.
  std::vector<int> dist_state(static_cast<std::size_t>(n), -1), dist_end(static_cast<std::size_t>(n), -1);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::deque<int> q;
  dist_state[static_cast<std::size_t>(a)] = 0;
  q.push_back(a);
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : g.neighbors(u)) {
      if (v == m.partner(u) || dist_end[static_cast<std::size_t>(v)] >= 0) continue;
      dist_end[static_cast<std::size_t>(v)] = dist_state[static_cast<std::size_t>(u)] + 1;
      parent[static_cast<std::size_t>(v)] = u;
      int next = m.partner(v);
      if (dist_state[static_cast<std::size_t>(next)] < 0) {
        dist_state[static_cast<std::size_t>(next)] = dist_end[static_cast<std::size_t>(v)];
        q.push_back(next);
      }
    }
  }

  int best = -1, best_v = -1;
  for (auto [x, y] : m.pairs()) {
    if (dist_end[static_cast<std::size_t>(x)] < 0 || dist_end[static_cast<std::size_t>(y)] < 0) continue;
    int len = dist_end[static_cast<std::size_t>(x)] + dist_end[static_cast<std::size_t>(y)];
    if (best < 0 || len < best || (len == best && x < best_v)) {
      best = len;
      best_v = x;
    }
  }
  if (best < 0 || best > res.bound) return res;

  auto path_to = [&](int v) {
    Walk p{v};
    int u = parent[static_cast<std::size_t>(v)];
    for (;;) {
      p.push_back(u);
      if (u == a) break;
      int prev = m.partner(u);
      p.push_back(prev);
      u = parent[static_cast<std::size_t>(prev)];
    }
    std::reverse(p.begin(), p.end());
    return p;
  };
  Walk w = path_to(best_v);
  Walk back = path_to(m.partner(best_v));
  w.insert(w.end(), back.rbegin(), back.rend());
  res.walk = std::move(w);
  res.length = best;
  return res;
}

}  // namespace bwembed

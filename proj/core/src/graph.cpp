#include "bwembed/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "bwembed/common.hpp"

namespace bwembed {

namespace {
std::string edge_name(int u, int v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }
}  // namespace

Graph::Graph(int n, const std::vector<Edge>& edges) {
  if (n < 0) fail(ErrorKind::invalid_input, "vertex count must be non-negative");
  adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail(ErrorKind::invalid_input, "edge " + edge_name(u, v) + " has an endpoint outside 0.." + std::to_string(n - 1));
    if (u == v) fail(ErrorKind::invalid_input, "edge " + edge_name(u, v) + " is a loop");
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& a = adj_[static_cast<std::size_t>(v)];
    std::sort(a.begin(), a.end());
    auto dup = std::adjacent_find(a.begin(), a.end());
    if (dup != a.end()) fail(ErrorKind::invalid_input, "edge " + edge_name(std::min(v, *dup), std::max(v, *dup)) + " is duplicated");
  }
  m_ = static_cast<std::int64_t>(edges.size());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n() || v >= n()) return false;
  const auto& a = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

int Graph::min_degree() const {
  int best = n() == 0 ? 0 : degree(0);
  for (int v = 1; v < n(); ++v) best = std::min(best, degree(v));
  return best;
}

int Graph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n(); ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n(); ++u)
    for (int v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

int Graph::degree_into(int v, const std::vector<char>& mask) const {
  int c = 0;
  for (int u : neighbors(v)) c += mask[static_cast<std::size_t>(u)] ? 1 : 0;
  return c;
}

int Graph::degree_into(int v, std::span<const int> sorted_set) const {
  const auto& a = neighbors(v);
  int c = 0;
  auto i = a.begin();
  auto j = sorted_set.begin();
  while (i != a.end() && j != sorted_set.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++c; ++i; ++j; }
  }
  return c;
}

Graph Graph::induced(const VertexSet& keep) const {
  std::vector<int> index(static_cast<std::size_t>(n()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
  std::vector<Edge> e;
  for (int u : keep)
    for (int v : neighbors(u))
      if (u < v && index[static_cast<std::size_t>(v)] >= 0)
        e.emplace_back(index[static_cast<std::size_t>(u)], index[static_cast<std::size_t>(v)]);
  return Graph(static_cast<int>(keep.size()), e);
}

int verify_bandwidth_ordering(const Graph& g, const BandwidthOrdering& ord) {
  const int n = g.n();
  if (static_cast<int>(ord.labels.size()) != n)
    fail(ErrorKind::invalid_ordering, "ordering has " + std::to_string(ord.labels.size()) + " labels for " + std::to_string(n) + " vertices");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    int l = ord.labels[static_cast<std::size_t>(v)];
    if (l < 0 || l >= n) fail(ErrorKind::invalid_ordering, "label " + std::to_string(l) + " of vertex " + std::to_string(v) + " is out of range");
    if (seen[static_cast<std::size_t>(l)]) fail(ErrorKind::invalid_ordering, "label " + std::to_string(l) + " is used twice");
    seen[static_cast<std::size_t>(l)] = 1;
  }
  int stretch = 0;
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) stretch = std::max(stretch, std::abs(ord.labels[static_cast<std::size_t>(u)] - ord.labels[static_cast<std::size_t>(v)]));
  return stretch;
}

BandwidthOrdering identity_ordering(int n, int claimed_bound) {
  BandwidthOrdering o;
  o.labels.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) o.labels[static_cast<std::size_t>(i)] = i;
  o.claimed_bound = claimed_bound;
  return o;
}

std::vector<int> order_by_label(const BandwidthOrdering& ord) {
  std::vector<int> by(ord.labels.size());
  for (std::size_t v = 0; v < ord.labels.size(); ++v) by[static_cast<std::size_t>(ord.labels[v])] = static_cast<int>(v);
  return by;
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) d[static_cast<std::size_t>(v)] = g.degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

VertexSet neighborhood(const Graph& g, std::span<const int> s) {
  std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
  for (int v : s) {
    if (v < 0 || v >= g.n()) fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " is not in the graph");
    for (int u : g.neighbors(v)) in[static_cast<std::size_t>(u)] = 1;
  }
  VertexSet out;
  for (int v = 0; v < g.n(); ++v)
    if (in[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

std::vector<int> bipartition(const Graph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.n()), -1);
  std::deque<int> q;
  for (int s = 0; s < g.n(); ++s) {
    if (side[static_cast<std::size_t>(s)] >= 0) continue;
    side[static_cast<std::size_t>(s)] = 0;
    q.push_back(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : g.neighbors(u)) {
        if (side[static_cast<std::size_t>(v)] < 0) {
          side[static_cast<std::size_t>(v)] = 1 - side[static_cast<std::size_t>(u)];
          q.push_back(v);
        } else if (side[static_cast<std::size_t>(v)] == side[static_cast<std::size_t>(u)]) {
          return {};
        }
      }
    }
  }
  return side;
}

VertexSet normalize_set(std::vector<int> s, int n) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int v : s)
    if (v < 0 || v >= n) fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " is not in the graph");
  return s;
}

}  // namespace bwembed

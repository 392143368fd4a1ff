#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bwembed {

using Edge = std::pair<int, int>;
using VertexSet = std::vector<int>;  // sorted, duplicate free

// Simple undirected graph on 0..n-1 with sorted adjacency lists. Immutable
// after construction.
class Graph {
 public:
  Graph() = default;
  // Throws invalid-input naming the first loop, duplicate or out-of-range edge.
  Graph(int n, const std::vector<Edge>& edges);

  int n() const { return static_cast<int>(adj_.size()); }
  std::int64_t edge_count() const { return m_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  bool has_edge(int u, int v) const;
  int min_degree() const;
  int max_degree() const;
  std::vector<Edge> edges() const;  // u < v, lexicographic

  // Number of neighbours of v inside `mask` (mask indexed by vertex).
  int degree_into(int v, const std::vector<char>& mask) const;
  int degree_into(int v, std::span<const int> sorted_set) const;

  // Induced subgraph on `keep` (sorted), relabelled 0..|keep|-1 in order.
  Graph induced(const VertexSet& keep) const;
  // Spanning subgraph keeping only edges accepted by `keep_edge`.
  template <class Pred>
  Graph filter_edges(Pred keep_edge) const {
    std::vector<Edge> kept;
    for (int u = 0; u < n(); ++u)
      for (int v : neighbors(u))
        if (u < v && keep_edge(u, v)) kept.emplace_back(u, v);
    return Graph(n(), kept);
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::int64_t m_ = 0;
};

// labels[v] is the position of vertex v; a bijection onto 0..n-1.
struct BandwidthOrdering {
  std::vector<int> labels;
  int claimed_bound = 0;
};

// Returns the maximum |label(u) - label(v)| over edges. Throws
// invalid-ordering if labels is not a bijection onto 0..n-1.
int verify_bandwidth_ordering(const Graph& g, const BandwidthOrdering& ord);
BandwidthOrdering identity_ordering(int n, int claimed_bound);
// Vertices listed by increasing label.
std::vector<int> order_by_label(const BandwidthOrdering& ord);

// Non-decreasing degree sequence.
std::vector<int> degree_sequence(const Graph& g);

// N(S): vertices with at least one neighbour in S (S may intersect N(S)).
VertexSet neighborhood(const Graph& g, std::span<const int> s);

// Two-colouring as 0/1 per vertex; empty if g is not bipartite.
std::vector<int> bipartition(const Graph& g);

VertexSet normalize_set(std::vector<int> s, int n);

}  // namespace bwembed

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bwembed/graph.hpp"

namespace bwembed {

using Walk = std::vector<int>;

// A set of disjoint edges of a graph; partner[v] == -1 when v is unmatched.
class Matching {
 public:
  Matching() = default;
  // Validates that the pairs are disjoint edges of g.
  Matching(const Graph& g, const std::vector<Edge>& pairs);

  int partner(int v) const { return partner_[static_cast<std::size_t>(v)]; }
  bool contains(int u, int v) const { return u >= 0 && u < n() && partner(u) == v; }
  bool is_perfect() const;
  int n() const { return static_cast<int>(partner_.size()); }
  const std::vector<Edge>& pairs() const { return pairs_; }

 private:
  std::vector<int> partner_;
  std::vector<Edge> pairs_;
};

// Positions are 0-based here. Steps (w[2i], w[2i+1]) must be non-matching
// edges of g and steps (w[2i+1], w[2i+2]) must be matching edges. Throws
// validation naming the first offending step.
void validate_shifted_walk(const Graph& g, const Matching& m, const Walk& w);
bool is_shifted_walk(const Graph& g, const Matching& m, const Walk& w);

// Number of traversals of each matching edge, keyed by its lower endpoint.
int max_matching_edge_uses(const Matching& m, const Walk& w);

// Splices out segments between repeated traversals until every matching edge
// is used at most twice; endpoints are preserved.
Walk simplify_walk(const Graph& g, const Matching& m, const Walk& w);

// Sub-walk whose only A-vertices sit at its two ends. A must contain at most
// one vertex from each matching edge and both ends of w.
Walk purify_walk(const Matching& m, std::span<const int> a, const Walk& w);

// SN_M(A) = { v' : v in N(A) }.
VertexSet shifted_neighborhood(const Graph& g, const Matching& m, std::span<const int> a);
// r-fold iterate; iterate(.., 0) returns A itself.
VertexSet shifted_neighborhood_iterate(const Graph& g, const Matching& m, std::span<const int> a, int r);

struct ClosedWalkResult {
  std::optional<Walk> walk;
  int length = 0;  // number of non-matching steps (half the vertex count)
  int bound = 0;   // floor(3 / nu)
};

// Shortest closed shifted walk starting and ending at `a`, found by BFS over
// shifted layers and closed through a matching edge whose two ends are both
// reached. Not found when none exists with length <= floor(3/nu).
ClosedWalkResult find_closed_shifted_walk(const Graph& g, const Matching& m, int a, double nu);

}  // namespace bwembed

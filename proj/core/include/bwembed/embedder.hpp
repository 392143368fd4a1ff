#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bwembed/graph.hpp"

namespace bwembed {

// W_c = f^{-1}(c) for c in 0..classes-1. Throws invalid_input on a value
// outside that range.
std::vector<VertexSet> classes_from_map(const std::vector<int>& f, int classes);

// Graph on the class indices with edges {2i, 2i+1}.
Graph matching_pairs_graph(int classes);

struct CompatibilityReport {
  std::vector<VertexSet> s_sets;  // S_i
  std::vector<VertexSet> t_sets;  // T_i = N_H(S) ∩ (W_i \ S)
  bool gamma1 = false;
  bool gamma2 = false;
  bool gamma3 = false;
  std::vector<int> gamma1_failures;             // class indices
  std::optional<std::pair<int, int>> gamma2_failure;  // classes joined by an H-edge but not by R
  std::optional<Edge> gamma2_edge;              // that H-edge
  std::vector<int> gamma3_failures;             // class indices
  std::vector<std::int64_t> s_bound, t_bound;   // floor(eps n_i), floor(eps min n_j)
  bool all() const { return gamma1 && gamma2 && gamma3; }
};

// h_classes partitions V(H); n_i = host_sizes[i]. R' must be a subgraph of R
// on the same index set.
CompatibilityReport check_compatibility(const Graph& h, const std::vector<VertexSet>& h_classes,
                                        const std::vector<int>& host_sizes, const Graph& r, const Graph& r_prime, double eps);

struct EmbedOptions {
  int budget_factor = 10;  // placements plus evaluated exchanges allowed: budget_factor * n
  std::uint64_t seed = 1;
};

struct Embedding {
  std::vector<int> phi;  // host vertex per H vertex
  int restarts = 0;
  std::int64_t placements = 0;  // spent from the budget
  int greedy_placed = 0;        // |S ∪ T|
  int forced = 0;               // vertices of the last round placed without a fitting image
};

// Places S ∪ T greedily, completes every R'-pair by two rounds of bipartite
// matching and then repairs the broken edges by exchanging images inside a
// class. A round that stalls restarts with fresh randomness. g_prime holds the host edges the embedding may use and
// host_classes[i] receives exactly h_classes[i]. Throws invalid_input when
// R' is not a perfect matching of single edges, and embedding_not_found once
// the budget is spent.
Embedding embed_blowup(const Graph& h, const std::vector<VertexSet>& h_classes, const Graph& g_prime,
                       const std::vector<VertexSet>& host_classes, const Graph& r_prime, const VertexSet& constrained,
                       const EmbedOptions& opt = {});

struct EmbeddingVerdict {
  bool holds = false;
  bool injective = false;
  bool edges = false;
  std::string failure;
};

// phi must have one entry per H vertex. Uses nothing but h, g and phi.
EmbeddingVerdict verify_embedding(const Graph& h, const Graph& g, const std::vector<int>& phi);

}  // namespace bwembed

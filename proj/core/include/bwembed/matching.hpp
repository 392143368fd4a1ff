#pragma once

#include <vector>

#include "bwembed/graph.hpp"

namespace bwembed {

// Maximum-cardinality matching of a general graph (Edmonds).
std::vector<Edge> maximum_matching(const Graph& g);
bool has_perfect_matching(const Graph& g);

// Hopcroft-Karp on a bipartite graph given as left -> candidate right
// indices. Returns match_left (right index or -1). Candidate order is
// respected, so callers can randomise the result by shuffling lists.
std::vector<int> hopcroft_karp(const std::vector<std::vector<int>>& left_adj, int right_count);

}  // namespace bwembed

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bwembed/graph.hpp"

namespace bwembed {

// Pair indices (0-based) of a chord between two A-classes or two B-classes.
struct Chord {
  int first = 0, second = 0;
  bool operator==(const Chord&) const = default;
};

// 2k classes ordered A_0, B_0, A_1, B_1, ..., so that consecutive classes
// (cyclically) follow the Hamilton cycle A_0 B_0 A_1 B_1 ... of the reduced
// graph and (A_i, B_i) are the matched pairs.
struct ClusterPartition {
  std::vector<VertexSet> classes;
  VertexSet exceptional;
  std::optional<Chord> a_chord;
  std::optional<Chord> b_chord;

  int k() const { return static_cast<int>(classes.size()) / 2; }
  int class_count() const { return static_cast<int>(classes.size()); }
  const VertexSet& a(int i) const { return classes[static_cast<std::size_t>(2 * i)]; }
  const VertexSet& b(int i) const { return classes[static_cast<std::size_t>(2 * i + 1)]; }
  VertexSet& a(int i) { return classes[static_cast<std::size_t>(2 * i)]; }
  VertexSet& b(int i) { return classes[static_cast<std::size_t>(2 * i + 1)]; }
  std::vector<int> sizes() const;
  // owner[v] = class index, -1 for exceptional vertices.
  std::vector<int> owner(int n) const;

  // Classes and exceptional set must be disjoint and cover 0..n-1; the class
  // count must be even and positive.
  void validate(int n) const;
};

}  // namespace bwembed

#pragma once

#include <cstdint>
#include <optional>

#include "bwembed/graph.hpp"
#include "bwembed/partition.hpp"

namespace bwembed {

struct HostInstance {
  Graph g;
  ClusterPartition partition;
};

// Blow-up of the cycle C_k: class i = {i*s, ..., i*s+s-1}, complete bipartite
// graphs between cyclically consecutive classes. The partition holds the k
// classes in cycle order (for even k they read as A_0, B_0, A_1, ...; for odd
// k the class list is not a valid A/B partition).
HostInstance gen_cycle_blowup(int k, int s);

struct SuperRegularOptions {
  std::optional<Chord> a_chord;  // default (0, k/2)
  std::optional<Chord> b_chord;  // default (1 mod k, (1 + k/2) mod k), shifted when equal
  double floor_fraction = 0.75;  // degree floor = ceil(floor_fraction * d * |other side|)
  int max_rounds = 100;
};

// 2k classes of size s in cycle order A_0 B_0 ... A_{k-1} B_{k-1}; every
// cyclically consecutive pair and both chord pairs are independent random
// bipartite graphs of density d, with low-degree vertices resampled until
// every vertex meets the floor (at most max_rounds rounds).
HostInstance gen_super_regular_host(int k, int s, double d, std::uint64_t seed, const SuperRegularOptions& opt = {});

// Classes V1 = [0,m), V2 = [m,2m-1), V3 = [2m-1,n); all edges except inside
// V1 and between V1 and V3. Needs n >= 2m-1.
Graph gen_extremal_counterexample(int n, int m);

// G(n,p).
Graph gen_random_graph(int n, double p, std::uint64_t seed);

struct BandwidthH {
  Graph h;
  BandwidthOrdering ordering;
  std::vector<int> side;  // 0 for A (even label), 1 for B (odd label)
};

// Vertices 0..n-1 labelled by themselves; candidate edges join labels of
// opposite parity at distance <= b and are kept with probability p while both
// ends have degree < max_degree.
BandwidthH gen_bandwidth_bipartite_h(int n, int max_degree, int b, std::uint64_t seed, double p = 0.5);

// Perfect matching {2t, 2t+1}; bandwidth 1. n must be even.
BandwidthH gen_matching_h(int n);
// Path 0-1-...-(n-1); bandwidth 1.
BandwidthH gen_path_h(int n);

}  // namespace bwembed

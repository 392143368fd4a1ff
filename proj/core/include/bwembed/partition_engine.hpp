#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bwembed/config.hpp"
#include "bwembed/graph.hpp"
#include "bwembed/partition.hpp"
#include "bwembed/regularity.hpp"
#include "bwembed/shifted_walks.hpp"

namespace bwembed {

// ---------------------------------------------------------------------------
// Hamilton cycle and chords of the reduced graph

struct CycleStructure {
  std::vector<int> order;  // order[p] = reduced-graph vertex at cycle position p
  Chord a_chord;           // pair indices i, j with order[2i] ~ order[2j]
  Chord b_chord;           // pair indices i, j with order[2i+1] ~ order[2j+1]
  std::int64_t nodes_explored = 0;
};

struct HamiltonOptions {
  std::int64_t node_budget = 5'000'000;
  // Optional filter on a candidate cycle order (e.g. super-regular matching).
  std::function<bool(const std::vector<int>&)> accept;
};

// Backtracking search from vertex 0 in increasing neighbour order; both
// rotations of each cycle are tried so the matching can sit on either parity.
// Throws structural if no cycle with an A-chord and a B-chord passes `accept`.
CycleStructure find_hamilton_cycle_and_chords(const Graph& r, const HamiltonOptions& opt = {});

// Reorders classes along the cycle and records the chords.
ClusterPartition relabel_along_cycle(const ClusterPartition& p, const CycleStructure& c);

// ---------------------------------------------------------------------------
// Moves

struct VertexMove {
  int vertex = 0;
  int from_class = 0;
  int to_class = 0;
  int reference_class = 0;  // class the vertex must be well connected to
  int witness_degree = 0;   // neighbours in reference_class at move time
  std::int64_t threshold = 0;  // required neighbours (rounded up)
};

// ---------------------------------------------------------------------------
// Exceptional vertices

struct ExceptionalPlacement {
  int vertex = 0;
  int neighbour_class = 0;  // V with |N(x) ∩ V| >= eta m'/4
  int target_class = 0;     // partner of V
  int neighbours = 0;
};

struct ExceptionalResult {
  ClusterPartition partition;
  std::vector<ExceptionalPlacement> placements;
  int cluster_size = 0;         // m'
  std::int64_t full_cap = 0;    // ceil(8 eps' m' / eta): a class is full at this many
  std::int64_t threshold = 0;   // ceil(eta m' / 4)
};

// Greedy placement of V0 = partition.exceptional in increasing vertex order.
// Throws assignment when some vertex has no admissible non-full class.
ExceptionalResult assign_exceptional_vertices(const Graph& g, const ClusterPartition& p, const Config& cfg);

// ---------------------------------------------------------------------------
// Balancing

struct BalanceStep {
  std::vector<int> walk;  // classes along the pure simple active walk
  int moved_per_edge = 0;
  std::int64_t sigma_before = 0;
  std::int64_t sigma_after = 0;
  std::vector<VertexMove> moves;
  std::vector<int> retired_pairs;  // pairs removed from R* before this step
};

struct BalanceResult {
  ClusterPartition partition;
  std::vector<BalanceStep> steps;
  std::vector<int> retired_pairs;
  std::int64_t sigma_initial = 0;
  int per_edge = 0;                 // ceil(lambda n / 2)
  std::int64_t step_limit = 0;      // ceil(sigma_initial / (lambda n))
  double paper_step_bound = 0;      // 4 eps' / (eta lambda)
  int active_floor = 0;             // ceil((1 - nu/12) k')
};

// R is the reduced graph on the classes of p (vertex c = class c), with the
// matching {A_i B_i}. Throws balancing on walk-not-found, a missing
// well-connected vertex, or R* dropping below the floor.
BalanceResult balance_partition(const Graph& g, const ClusterPartition& p, const Graph& r, const Config& cfg);

// Σ* = Σ over pairs with ||A_i|-|B_i|| > lambda n of ||A_i|-|B_i||.
std::int64_t imbalance_sigma(const ClusterPartition& p, Fraction lambda, int n);

// ---------------------------------------------------------------------------
// Mobility

struct HypothesisCheck {
  std::string name;  // "i" .. "vii" or "size"
  bool holds = true;
  std::string detail;
};

struct MobilityOptions {
  bool check_hypotheses = true;
  PairCheckOptions pair;
};

struct MobilityResult {
  ClusterPartition partition;
  std::vector<VertexMove> moves;
  std::vector<HypothesisCheck> hypotheses;
  std::vector<int> churn;      // |V'_c Δ V_c| per class
  std::int64_t churn_bound = 0;  // floor(5 k xi n)
  bool used_b_chord = true;      // false when the mirrored A-chord transfer ran
};

// targets[c] is the demanded size of class c. (a_i) and (b_i) are the
// differences to the current sizes. Throws structural naming the first
// failed hypothesis, or assignment if a move finds no well-connected vertex.
MobilityResult mobility_redistribute(const Graph& g, const ClusterPartition& p, const std::vector<int>& targets, double eps,
                                     double d, double xi, const MobilityOptions& opt = {});

// ---------------------------------------------------------------------------
// Whole pipeline for the host

struct AlphaReport {
  bool alpha1 = false;  // exact sizes
  bool alpha2 = false;  // A'_i B'_i super-regular
  bool alpha3 = false;  // B'_i A'_{i+1} regular
  bool alpha4 = false;  // A-chord regular
  bool alpha5 = false;  // B-chord regular
  std::vector<std::string> failures;
  bool heuristic = false;
  bool all() const { return alpha1 && alpha2 && alpha3 && alpha4 && alpha5; }
};

struct LemmaGBaseline {
  ClusterPartition partition;  // balanced, relabelled along the cycle
  CycleStructure cycle;
  ReducedGraph reduced;
  ExceptionalResult exceptional;
  BalanceResult balance;
  std::vector<int> sizes;  // (n_i)
  Graph pure;              // G' : edges of G between classes adjacent in R
};

struct LemmaGResult {
  LemmaGBaseline baseline;
  MobilityResult mobility;
  AlphaReport alpha;
  ClusterPartition final_partition;
  Graph pure;  // G' for the final partition
};

// Stages: reduced graph at (eps', d'), Hamilton cycle with super-regular
// matching and chords, exceptional assignment, balancing. Errors carry the
// stage name.
LemmaGBaseline lemma_for_g_baseline(const Graph& g, const ClusterPartition& injected, const Config& cfg, std::uint64_t seed);

// Resizes to `demand` via mobility (run with slack 2k*xi) and re-verifies
// (alpha1)-(alpha5) at (eps, d). Throws parameter if some demand exceeds
// n_i + xi n.
LemmaGResult lemma_for_g_finish(const Graph& g, const LemmaGBaseline& base, const std::vector<int>& demand, const Config& cfg,
                                std::uint64_t seed);

// Edges of G joining two classes that are adjacent in R.
Graph pure_subgraph(const Graph& g, const ClusterPartition& p, const Graph& r);

AlphaReport verify_alpha(const Graph& g, const ClusterPartition& p, const std::vector<int>& demand, double eps, double d,
                         const PairCheckOptions& opt);

}  // namespace bwembed

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bwembed/common.hpp"
#include "bwembed/conditions.hpp"
#include "bwembed/graph.hpp"

namespace bwembed {

// e(A,B) / (|A||B|) as an exact fraction; A and B must be disjoint and non-empty.
Fraction pair_density(const Graph& g, std::span<const int> a, std::span<const int> b);
std::int64_t pair_edge_count(const Graph& g, std::span<const int> a, std::span<const int> b);

struct PairCheckOptions {
  std::optional<CheckMode> mode;  // unset: exact when both sides fit the cap
  int exact_cap = 14;
  int random_seeds = 64;  // heuristic mode
  int refine_rounds = 4;
  std::uint64_t seed = 7;
};

struct RegularityVerdict {
  bool regular = true;
  bool below_density = false;
  Fraction density;
  CheckMode mode = CheckMode::exact;
  // X ⊆ A, Y ⊆ B, both large enough, with |d(A,B) - d(X,Y)| >= eps.
  std::optional<std::pair<VertexSet, VertexSet>> witness;
  double witness_deviation = 0;
  double max_deviation_seen = 0;
};

// (eps,d)-regularity: d(A,B) >= d and every X ⊆ A, Y ⊆ B with |X| >= eps|A|,
// |Y| >= eps|B| has |d(A,B) - d(X,Y)| < eps. Exact mode is a proof; heuristic
// mode can only refute, and any witness it returns is verified exactly.
RegularityVerdict check_regular_pair(const Graph& g, std::span<const int> a, std::span<const int> b, double eps, double d,
                                     const PairCheckOptions& opt = {});

// Re-checks a claimed witness by direct counting.
bool is_regularity_witness(const Graph& g, std::span<const int> a, std::span<const int> b, const VertexSet& x,
                           const VertexSet& y, Fraction eps);

struct SuperRegularVerdict {
  RegularityVerdict regularity;
  bool super_regular = false;
  int min_degree_a = 0;  // least |N(v) ∩ B| over v in A
  int min_degree_b = 0;
  VertexSet low_degree_a, low_degree_b;  // vertices below d|B| (resp. d|A|)
};

SuperRegularVerdict check_super_regular_pair(const Graph& g, std::span<const int> a, std::span<const int> b, double eps,
                                             double d, const PairCheckOptions& opt = {});

struct ReducedGraph {
  Graph r;  // vertex i is class i
  double eps = 0, d = 0;
  bool heuristic = false;  // some pair was only checked heuristically
};

// Joins every pair of classes that passes check_regular_pair.
ReducedGraph build_reduced_graph(const Graph& g, const std::vector<VertexSet>& classes, double eps, double d,
                                 const PairCheckOptions& opt = {});

struct PerturbationBound {
  double eps = 0, d = 0;
  bool clamped = false;
};

// Parameters that survive replacing A by A' with |A'ΔA| <= alpha|A| (and B
// likewise with beta): eps + 3(sqrt(alpha)+sqrt(beta)), d - 2(alpha+beta),
// clamped into [0,1].
PerturbationBound perturbation_bound(double eps, double d, double alpha, double beta);

}  // namespace bwembed

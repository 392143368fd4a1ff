#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "bwembed/common.hpp"
#include "bwembed/graph.hpp"

namespace bwembed {

enum class CheckMode { exact, sampled, heuristic };
std::string to_string(CheckMode m);
CheckMode parse_check_mode(const std::string& s);

// RN_nu(S) = { v : |N(v) ∩ S| >= nu*n }.
VertexSet robust_neighborhood(const Graph& g, std::span<const int> s, Fraction nu);

struct ExpanderOptions {
  CheckMode mode = CheckMode::exact;
  int exact_cap = 20;        // largest n accepted by exact mode
  std::int64_t trials = 2000;  // sampled mode
  std::uint64_t seed = 1;
};

struct ExpanderVerdict {
  bool holds = true;
  std::optional<VertexSet> witness;  // a set S with |RN(S)| < |S| + nu*n
  int witness_rn_size = 0;
  CheckMode mode = CheckMode::exact;
  Fraction nu, tau;
  int min_size = 0, max_size = 0;  // admissible |S| window
  std::int64_t sets_checked = 0;
};

// Exact mode enumerates every admissible S (n <= exact_cap) and is a proof;
// sampled mode draws a uniform size then a uniform subset and can only refute.
ExpanderVerdict check_robust_expander(const Graph& g, double nu, double tau, const ExpanderOptions& opt = {});

// True iff S violates the expansion requirement; used to re-verify witnesses.
bool is_expansion_violation(const Graph& g, std::span<const int> s, Fraction nu, Fraction tau);

struct DegreeSequenceVerdict {
  bool holds = true;
  int failing_index = 0;  // least 1-based i with both disjuncts false
};

// For every 1 <= i < n/2: d_i >= i + gamma*n, or d_{n-i-floor(gamma*n)} >= n-i.
// `d` must be non-decreasing; a disjunct whose index falls below 1 is false.
DegreeSequenceVerdict check_degree_sequence_condition(std::span<const int> d, double gamma);

struct OreVerdict {
  bool holds = true;
  std::optional<Edge> witness;  // non-adjacent x<y with d(x)+d(y) < (1+gamma)n
};

OreVerdict check_ore_condition(const Graph& g, double gamma);

}  // namespace bwembed

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bwembed/common.hpp"
#include "bwembed/config.hpp"
#include "bwembed/graph.hpp"
#include "bwembed/partition.hpp"

namespace bwembed {

// ---------------------------------------------------------------------------
// Segments of H
//
// Positions follow the ordering: the vertex with label s - 1 is x_s. Small
// segment pairs are indexed 0..m1-1 and hold A_i (side 0) and B_i (side 1).

struct SegmentDecomposition {
  int n = 0;
  int m1 = 0;
  int beta_n = 0;  // bandwidth bound used for the windows
  int max_degree = 0;
  std::vector<int> side;     // 0 = A, 1 = B, after repair
  std::vector<int> segment;  // small pair index per vertex
  std::vector<VertexSet> a, b;
  VertexSet window_s;  // union of the boundary windows
  VertexSet s;         // window_s restricted to ends of edges leaving their own pair
  int repaired = 0;    // isolated vertices moved between A_i and B_i
  int min_segment = 0;  // ceil(n / (4 Delta m1))

  int size_a() const;
  int size_b() const;
};

// Index-window rule with the A windows shifted back by beta_n, boundary set,
// min-size repair and certification of properties (a)-(d). `side` is a proper
// 2-colouring of h. Throws decomposition on a failed repair or property.
SegmentDecomposition chop_into_segments(const Graph& h, const BandwidthOrdering& ord, const std::vector<int>& side,
                                        int beta_n, int m1, int max_degree);

struct SegmentCertificate {
  bool a = false, b = false, c = false, d = false, min_size = false;
  std::string failure;
  bool all() const { return a && b && c && d && min_size; }
};
SegmentCertificate certify_segments(const Graph& h, const SegmentDecomposition& dec);

struct Grouping {
  int m2 = 0;
  int k2 = 0;
  int m3 = 0;                 // 1-based count of first-phase large segments
  int pairs_per_large = 0;    // m1 / m2
  std::vector<int> sj;        // |L_j ∩ A| - |L_j ∩ B|
  std::vector<int> large_size;
  // Small pair ranges [begin, end) of D_j and S_j for every large segment.
  std::vector<std::pair<int, int>> drunken, sober;
};

// Smallest m3 in [ceil(xi m2/20), floor((1 - xi/20) m2)] whose prefix sum of
// `sj` is within xi n/20 of imbalance/2. Throws parameter if none exists.
int select_m3(const std::vector<int>& sj, int imbalance, int n, double xi);

// Groups consecutive pairs into m2 large segments (m2 | m1) and splits off the
// drunken blocks: the last k2 pairs for j <= m3, the first k2 pairs after.
Grouping group_and_split(const SegmentDecomposition& dec, int m2, int k2, double xi);

// ---------------------------------------------------------------------------
// Assignment algorithms
//
// C' has vertices 0..2k'-1; its pair p is {2p, 2p+1}. An initial vertex is
// always even (the first vertex of a pair), a final vertex always odd.

struct SegmentRun {
  std::vector<int> pairs;  // C' pair assigned to each small pair, in order
  std::vector<char> coins;  // drunken only: 1 = advance
  int final_vertex = 0;
};

SegmentRun sober_assign(int pair_count, int initial_vertex, int k_prime);
SegmentRun drunken_assign(int pair_count, int initial_vertex, int k_prime, Rng& rng);
// Replays a logged coin sequence (one coin per pair after the first).
SegmentRun drunken_replay(int pair_count, int initial_vertex, int k_prime, const std::vector<char>& coins);
// Throws parameter when pair_count - 1 advances cannot reach the target pair.
SegmentRun seeking_assign(int pair_count, int initial_vertex, int target_vertex, int k_prime);

// Exact law of Bin(trials, p) mod k.
std::vector<double> binomial_mod_distribution(int trials, double p, int k);

// ---------------------------------------------------------------------------
// The homomorphism f = f1 ∘ f2 : H -> C ∪ {c}

struct LemmaHParams {
  int k1 = 0;
  int m1 = 0;
  int m2 = 0;
  int k2 = 0;
};

// Desk-scale defaults for unset fields (0): k1 = k, m2 = 2, k2 the larger of
// k' and floor(xi m1 / (6 k' m2)), one sober pair per large segment.
LemmaHParams resolve_lemma_h_params(const LemmaHParams& given, int n, const std::vector<int>& sizes, double xi);

// k' and the table f1 from k1 and the sizes (n_i).
std::vector<int> cycle_map_f1(const std::vector<int>& sizes, int k1, int n);

struct BetaCertificate {
  bool homomorphism = false;
  bool beta1 = false;
  bool beta2 = false;
  bool beta3 = false;
  std::vector<int> tally;  // |f^{-1}(i)|
  std::string failure;
  bool all() const { return homomorphism && beta1 && beta2 && beta3; }
};

// Independent recomputation from f, S and the sizes only. The chord joins
// classes 2*first+1 and 2*second+1.
BetaCertificate check_hom_certificate(const Graph& h, const std::vector<int>& f, const VertexSet& s,
                                      const std::vector<int>& sizes, Chord chord, double xi);

struct HomAttempt {
  int i0 = 0;   // first-phase start pair
  int i0b = 0;  // second-phase start pair
  std::vector<std::vector<char>> coins;  // per drunken segment, in run order
  bool balance = false;
  bool beta1 = false;
  bool beta2 = false;
  bool tally = true;  // within Config::tally_slack, when enabled
};

struct Homomorphism {
  std::vector<int> f;   // class of C per H vertex
  std::vector<int> f2;  // vertex of C' per H vertex
  std::vector<int> f1;  // class of C per vertex of C'
  VertexSet s;         // ends of edges whose image is not a pair {2i, 2i+1}
  VertexSet window_s;  // union of the boundary windows
  int k = 0;
  int k_prime = 0;
  Chord chord;        // pair indices in C
  Chord chord_prime;  // pair indices in C'
  LemmaHParams params;
  int beta_n = 0;
  int m3 = 0;
  bool swapped = false;  // colour classes exchanged so that |A| >= |B|
  int attempts = 0;
  bool first_try_balance = false;
  std::vector<HomAttempt> log;
  BetaCertificate certificate;
  SegmentDecomposition segments;
  Grouping grouping;
};

// side[v] is a proper 2-colouring of h; sizes are (n_i) over the 2k classes.
// Retries the randomised schedule until both phase balance bounds, (beta1),
// (beta2) and the optional tally slack hold.
Homomorphism build_homomorphism(const Graph& h, const BandwidthOrdering& ord, const std::vector<int>& side,
                                const std::vector<int>& sizes, Chord chord, const Config& cfg, std::uint64_t seed,
                                const LemmaHParams& params = {});

}  // namespace bwembed

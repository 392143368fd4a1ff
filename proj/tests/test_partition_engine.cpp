#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "bwembed/hostgen.hpp"
#include "bwembed/partition_engine.hpp"
#include "support.hpp"

using namespace bwembed;

namespace {

VertexSet range(int from, int count) {
  VertexSet v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), from);
  return v;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::internal;
}

int count_into(const Graph& g, int v, const VertexSet& s) {
  int c = 0;
  for (int u : s) c += bwtest::adjacent(g, v, u);
  return c;
}

// Every vertex of 0..n-1 appears exactly once across classes and V0.
void expect_partition_of(const ClusterPartition& p, int n) {
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (const auto& c : p.classes)
    for (int v : c) ++seen[static_cast<std::size_t>(v)];
  for (int v : p.exceptional) ++seen[static_cast<std::size_t>(v)];
  for (int v = 0; v < n; ++v) EXPECT_EQ(seen[static_cast<std::size_t>(v)], 1) << "vertex " << v;
}

void expect_valid_structure(const Graph& r, const CycleStructure& c) {
  const int n = r.n();
  ASSERT_EQ(static_cast<int>(c.order.size()), n);
  std::set<int> distinct(c.order.begin(), c.order.end());
  EXPECT_EQ(static_cast<int>(distinct.size()), n);
  for (int p = 0; p < n; ++p) EXPECT_TRUE(bwtest::adjacent(r, c.order[static_cast<std::size_t>(p)], c.order[static_cast<std::size_t>((p + 1) % n)]));
  auto at = [&](int p) { return c.order[static_cast<std::size_t>(p)]; };
  EXPECT_NE(c.a_chord.first, c.a_chord.second);
  EXPECT_NE(c.b_chord.first, c.b_chord.second);
  EXPECT_TRUE(bwtest::adjacent(r, at(2 * c.a_chord.first), at(2 * c.a_chord.second)));
  EXPECT_TRUE(bwtest::adjacent(r, at(2 * c.b_chord.first + 1), at(2 * c.b_chord.second + 1)));
}

// Adds `extra` vertices after g's vertices, vertex n+t joined to nbrs[t].
Graph with_extra(const Graph& g, const std::vector<VertexSet>& nbrs) {
  auto e = g.edges();
  for (std::size_t t = 0; t < nbrs.size(); ++t)
    for (int u : nbrs[t]) e.emplace_back(u, g.n() + static_cast<int>(t));
  return Graph(g.n() + static_cast<int>(nbrs.size()), e);
}

// Classes of the given sizes over consecutive vertex ranges.
ClusterPartition consecutive(const std::vector<int>& sizes) {
  ClusterPartition p;
  int at = 0;
  for (int s : sizes) {
    p.classes.push_back(range(at, s));
    at += s;
  }
  return p;
}

Graph perfect_matching_r(int classes) {
  std::vector<Edge> e;
  for (int c = 0; c < classes; c += 2) e.emplace_back(c, c + 1);
  return Graph(classes, e);
}

Config balancing_config() {
  Config cfg;
  cfg.lambda = 0.05;
  return cfg;
}

}  // namespace

TEST(HamiltonCycle, EightCycleWithChords) {
  // C8 on clusters 0..7 plus chords {0,4} (A-side) and {1,5} (B-side).
  std::vector<Edge> e;
  for (int v = 0; v < 8; ++v) e.emplace_back(std::min(v, (v + 1) % 8), std::max(v, (v + 1) % 8));
  e.emplace_back(0, 4);
  e.emplace_back(1, 5);
  Graph r(8, e);
  auto c = find_hamilton_cycle_and_chords(r);
  expect_valid_structure(r, c);
  auto at = [&](int p) { return c.order[static_cast<std::size_t>(p)]; };
  std::set<std::pair<int, int>> chords{std::minmax(at(2 * c.a_chord.first), at(2 * c.a_chord.second)),
                                       std::minmax(at(2 * c.b_chord.first + 1), at(2 * c.b_chord.second + 1))};
  EXPECT_EQ(chords, (std::set<std::pair<int, int>>{{0, 4}, {1, 5}}));
}

TEST(HamiltonCycle, CompleteGraph) {
  Graph r = bwtest::complete(6);
  expect_valid_structure(r, find_hamilton_cycle_and_chords(r));
}

TEST(HamiltonCycle, ChordlessCycleFails) {
  EXPECT_EQ(kind_of([] { find_hamilton_cycle_and_chords(bwtest::cycle(6)); }), ErrorKind::structural);
  EXPECT_EQ(kind_of([] { find_hamilton_cycle_and_chords(bwtest::complete(5)); }), ErrorKind::feasibility);
}

TEST(HamiltonCycle, RelabelFollowsOrder) {
  ClusterPartition p = consecutive({2, 2, 2, 2, 2, 2});
  CycleStructure c{{0, 2, 4, 1, 3, 5}, {0, 1}, {0, 2}, 0};
  auto q = relabel_along_cycle(p, c);
  EXPECT_EQ(q.classes[1], p.classes[2]);
  EXPECT_EQ(q.classes[3], p.classes[1]);
  EXPECT_EQ(q.a_chord, (Chord{0, 1}));
  EXPECT_EQ(q.b_chord, (Chord{0, 2}));
}

TEST(ExceptionalVertices, EmptySetIsIdentity) {
  HostInstance h = gen_super_regular_host(3, 10, 0.5, 1);
  auto r = assign_exceptional_vertices(h.g, h.partition, Config{});
  EXPECT_EQ(r.partition.classes, h.partition.classes);
  EXPECT_TRUE(r.placements.empty());
}

TEST(ExceptionalVertices, JoinsPartnerOfNeighbourClass) {
  HostInstance h = gen_super_regular_host(3, 10, 0.5, 1);
  // The extra vertex sees all of B_2 (class 5) and nothing else.
  Graph g = with_extra(h.g, {h.partition.b(2)});
  ClusterPartition p = h.partition;
  p.exceptional = {60};
  auto r = assign_exceptional_vertices(g, p, Config{});
  ASSERT_EQ(r.placements.size(), 1u);
  EXPECT_EQ(r.placements[0].neighbour_class, 5);
  EXPECT_EQ(r.placements[0].target_class, 4);
  EXPECT_TRUE(std::binary_search(r.partition.a(2).begin(), r.partition.a(2).end(), 60));
  expect_partition_of(r.partition, g.n());
}

TEST(ExceptionalVertices, ConcentratedNeighbourhoodsRecounted) {
  HostInstance h = gen_super_regular_host(3, 10, 0.5, 2);
  const auto& cls = h.partition.classes;
  // One extra mostly in A_0 with a few in B_1; one spread over A_1 and B_2.
  VertexSet x{cls[0][0], cls[0][1], cls[0][2], cls[0][3], cls[0][4], cls[3][0], cls[3][1]};
  VertexSet y{cls[2][0], cls[2][1], cls[2][2], cls[5][0], cls[5][1], cls[5][2], cls[5][3]};
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  Graph g = with_extra(h.g, {x, y});
  ClusterPartition p = h.partition;
  p.exceptional = {60, 61};
  Config cfg;
  auto r = assign_exceptional_vertices(g, p, cfg);
  ASSERT_EQ(r.placements.size(), 2u);
  EXPECT_EQ(r.cluster_size, 10);
  EXPECT_EQ(r.threshold, static_cast<std::int64_t>(std::ceil(cfg.eta * 10 / 4)));
  std::vector<int> received(6, 0);
  for (const auto& pl : r.placements) {
    const auto& nb_class = p.classes[static_cast<std::size_t>(pl.neighbour_class)];
    EXPECT_EQ(count_into(g, pl.vertex, nb_class), pl.neighbours);
    EXPECT_GE(pl.neighbours, r.threshold);
    EXPECT_EQ(pl.target_class, pl.neighbour_class ^ 1);
    // Greedy picks a class with the most neighbours.
    for (const auto& c : p.classes) EXPECT_LE(count_into(g, pl.vertex, c), pl.neighbours);
    ++received[static_cast<std::size_t>(pl.target_class)];
  }
  EXPECT_EQ(r.placements[0].target_class, 1);
  EXPECT_EQ(r.placements[1].target_class, 4);
  for (int c : received) EXPECT_LE(c, r.full_cap);
  expect_partition_of(r.partition, g.n());
}

TEST(ExceptionalVertices, IsolatedVertexCannotBePlaced) {
  HostInstance h = gen_super_regular_host(3, 10, 0.5, 1);
  Graph g = with_extra(h.g, {VertexSet{}});
  ClusterPartition p = h.partition;
  p.exceptional = {60};
  EXPECT_EQ(kind_of([&] { assign_exceptional_vertices(g, p, Config{}); }), ErrorKind::assignment);
}

TEST(Balancing, BalancedPartitionTakesNoSteps) {
  ClusterPartition p = consecutive({13, 14, 13, 13, 14, 13});
  auto r = balance_partition(bwtest::complete(80), p, bwtest::complete(6), balancing_config());
  EXPECT_TRUE(r.steps.empty());
  EXPECT_EQ(r.sigma_initial, 0);
  EXPECT_EQ(r.partition.classes, p.classes);
}

TEST(Balancing, ImbalancedPairIsEvenedOut) {
  // n = 400, lambda n = 8: pair 0 is off by 2 lambda n. Classes must be
  // large enough that moving lambda n/2 vertices stays under the drift cap.
  const int n = 400;
  Graph g = gen_random_graph(n, 0.9, 4);
  ClusterPartition p = consecutive({75, 59, 67, 66, 67, 66});
  Config cfg;
  auto r = balance_partition(g, p, bwtest::complete(6), cfg);
  EXPECT_EQ(r.sigma_initial, 16);
  EXPECT_EQ(r.per_edge, 4);
  EXPECT_TRUE(r.retired_pairs.empty());
  ASSERT_FALSE(r.steps.empty());
  EXPECT_LE(static_cast<std::int64_t>(r.steps.size()), r.step_limit);
  const double lambda_n = cfg.lambda * n;
  for (const auto& s : r.steps) {
    EXPECT_GE(static_cast<double>(s.sigma_before - s.sigma_after), lambda_n);
    ASSERT_GE(s.walk.size(), 2u);
    for (const auto& m : s.moves) {
      EXPECT_EQ(count_into(g, m.vertex, p.classes[static_cast<std::size_t>(m.reference_class)]), m.witness_degree);
      EXPECT_GE(m.witness_degree, m.threshold);
    }
  }
  for (int i = 0; i < 3; ++i)
    EXPECT_LE(std::abs(static_cast<int>(r.partition.a(i).size()) - static_cast<int>(r.partition.b(i).size())), lambda_n);
  EXPECT_EQ(imbalance_sigma(r.partition, Fraction::from_double(cfg.lambda), n), 0);
  expect_partition_of(r.partition, n);
}

TEST(Balancing, NoClosedWalkIsBalancingError) {
  ClusterPartition p = consecutive({17, 9, 13, 14, 13, 14});
  EXPECT_EQ(kind_of([&] { balance_partition(bwtest::complete(80), p, perfect_matching_r(6), balancing_config()); }),
            ErrorKind::balancing);
}

TEST(Balancing, ImbalanceSigmaCountsOnlyLargeGaps) {
  ClusterPartition p = consecutive({17, 9, 15, 12, 13, 14});
  EXPECT_EQ(imbalance_sigma(p, Fraction::of(1, 20), 80), 8);  // gaps 8, 3, 1 against 4
  EXPECT_EQ(imbalance_sigma(p, Fraction::of(1, 40), 80), 11);
}

namespace {

// Dense host whose pairs pass every mobility hypothesis at (0.45, 0.6).
struct MobilityHost {
  HostInstance h = gen_super_regular_host(3, 10, 0.8, 3);
  double eps = 0.45, d = 0.6, xi = 0.1;
};

std::vector<int> shifted(const ClusterPartition& p, const std::vector<int>& a, const std::vector<int>& b) {
  auto t = p.sizes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    t[2 * i] += a[i];
    t[2 * i + 1] += b[i];
  }
  return t;
}

void expect_mobility_ledger(const Graph& g, const ClusterPartition& before, const MobilityResult& r, const std::vector<int>& targets) {
  EXPECT_EQ(r.partition.sizes(), targets);
  expect_partition_of(r.partition, g.n());
  for (std::size_t c = 0; c < r.churn.size(); ++c) {
    std::vector<int> sym;
    std::set_symmetric_difference(before.classes[c].begin(), before.classes[c].end(), r.partition.classes[c].begin(),
                                  r.partition.classes[c].end(), std::back_inserter(sym));
    EXPECT_EQ(static_cast<int>(sym.size()), r.churn[c]);
    EXPECT_LE(r.churn[c], r.churn_bound);
  }
  for (const auto& m : r.moves) {
    EXPECT_EQ(count_into(g, m.vertex, before.classes[static_cast<std::size_t>(m.reference_class)]), m.witness_degree);
    EXPECT_GE(m.witness_degree, m.threshold);
  }
}

}  // namespace

TEST(Mobility, ZeroTargetsIsIdentity) {
  MobilityHost m;
  auto r = mobility_redistribute(m.h.g, m.h.partition, m.h.partition.sizes(), m.eps, m.d, m.xi);
  EXPECT_TRUE(r.moves.empty());
  EXPECT_EQ(r.partition.classes, m.h.partition.classes);
  for (const auto& hc : r.hypotheses) EXPECT_TRUE(hc.holds) << hc.name;
  EXPECT_EQ(r.hypotheses.size(), 8u);
}

TEST(Mobility, ShiftAlongACycle) {
  MobilityHost m;
  auto targets = shifted(m.h.partition, {1, -1, 0}, {0, 0, 0});
  auto r = mobility_redistribute(m.h.g, m.h.partition, targets, m.eps, m.d, m.xi);
  expect_mobility_ledger(m.h.g, m.h.partition, r, targets);
  EXPECT_EQ(r.churn_bound, static_cast<std::int64_t>(5 * 3 * 0.1 * 60));
}

TEST(Mobility, ChordTransferRunsFirst) {
  MobilityHost m;
  const auto& p = m.h.partition;
  auto targets = shifted(p, {2, 0, 0}, {-2, 0, 0});
  auto r = mobility_redistribute(m.h.g, p, targets, m.eps, m.d, m.xi);
  expect_mobility_ledger(m.h.g, p, r, targets);
  EXPECT_TRUE(r.used_b_chord);
  ASSERT_GE(r.moves.size(), 2u);
  const int i2 = p.b_chord->first, j2 = p.b_chord->second;
  const auto partner_size = static_cast<double>(p.b(j2).size());
  for (int t = 0; t < 2; ++t) {
    const auto& mv = r.moves[static_cast<std::size_t>(t)];
    EXPECT_EQ(mv.from_class, 2 * i2 + 1);
    EXPECT_EQ(mv.to_class, 2 * j2);
    EXPECT_EQ(mv.reference_class, 2 * j2 + 1);
    EXPECT_GE(mv.witness_degree, (m.d - m.eps) * partner_size - 1e-9);
  }
}

TEST(Mobility, MirroredTransferUsesAChord) {
  MobilityHost m;
  auto targets = shifted(m.h.partition, {-2, 0, 0}, {2, 0, 0});
  auto r = mobility_redistribute(m.h.g, m.h.partition, targets, m.eps, m.d, m.xi);
  expect_mobility_ledger(m.h.g, m.h.partition, r, targets);
  EXPECT_FALSE(r.used_b_chord);
  ASSERT_FALSE(r.moves.empty());
  EXPECT_EQ(r.moves[0].from_class, 2 * m.h.partition.a_chord->first);
}

TEST(Mobility, HypothesisFailuresAreStructural) {
  MobilityHost m;
  auto unbalanced = shifted(m.h.partition, {1, 0, 0}, {0, 0, 0});
  try {
    mobility_redistribute(m.h.g, m.h.partition, unbalanced, m.eps, m.d, m.xi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::structural);
    EXPECT_NE(std::string(e.what()).find("(vi)"), std::string::npos);
  }
  auto too_far = shifted(m.h.partition, {6, -6, 0}, {0, 0, 0});  // |a_i| = xi n
  EXPECT_EQ(kind_of([&] { mobility_redistribute(m.h.g, m.h.partition, too_far, m.eps, m.d, m.xi); }), ErrorKind::structural);
  // An edgeless host fails (i).
  EXPECT_EQ(kind_of([&] { mobility_redistribute(bwtest::edgeless(60), m.h.partition, m.h.partition.sizes(), m.eps, m.d, m.xi); }),
            ErrorKind::structural);
}

// Random target vectors satisfying (v)-(vii): exact sizes, conservation and
// the churn ledger.
TEST(Mobility, RandomTargetsKeepLedger) {
  MobilityHost m;
  const auto& p = m.h.partition;
  Rng rng(17);
  int runs = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> a(3), b(3);
    int sum_a = 0, sum_b = 0;
    for (int i = 0; i < 3; ++i) {
      a[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(11)) - 5;
      b[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(11)) - 5;
      sum_a += a[static_cast<std::size_t>(i)];
      sum_b += b[static_cast<std::size_t>(i)];
    }
    // Fix the last B entry so the totals cancel; skip if that breaks (v).
    b[2] -= sum_a + sum_b;
    if (std::abs(b[2]) >= 6 || std::abs(sum_a) >= 6) continue;
    auto targets = shifted(p, a, b);
    ++runs;
    try {
      auto r = mobility_redistribute(m.h.g, p, targets, m.eps, m.d, m.xi);
      expect_mobility_ledger(m.h.g, p, r, targets);
    } catch (const Error& e) {
      // Only a shortage of well-connected vertices may stop a valid request.
      EXPECT_EQ(e.kind(), ErrorKind::assignment) << e.what();
    }
  }
  EXPECT_GT(runs, 20);
}

TEST(LemmaG, BaselineDemandPassesAlphaChecks) {
  HostInstance h = gen_super_regular_host(4, 50, 0.5, 1001);
  Config cfg;
  auto base = lemma_for_g_baseline(h.g, h.partition, cfg, 1);
  const int n = h.g.n();
  const int k = base.partition.k();
  for (int i = 0; i < k; ++i) {
    EXPECT_LE(std::abs(base.sizes[static_cast<std::size_t>(2 * i)] - base.sizes[static_cast<std::size_t>(2 * i + 1)]),
              cfg.lambda * n);
  }
  for (int s : base.sizes) EXPECT_GT(3 * k * s, n);
  expect_partition_of(base.partition, n);
  auto fin = lemma_for_g_finish(h.g, base, base.sizes, cfg, 1);
  EXPECT_TRUE(fin.alpha.all()) << (fin.alpha.failures.empty() ? "" : fin.alpha.failures.front());
  EXPECT_EQ(fin.final_partition.sizes(), base.sizes);
  // G' keeps only edges between classes adjacent in R.
  const auto owner = fin.final_partition.owner(n);
  for (auto [u, v] : fin.pure.edges()) {
    int a = owner[static_cast<std::size_t>(u)], b = owner[static_cast<std::size_t>(v)];
    EXPECT_TRUE(base.reduced.r.has_edge(a, b));
  }
}

TEST(LemmaG, ShiftedDemandStillCertifies) {
  HostInstance h = gen_super_regular_host(4, 50, 0.5, 1001);
  Config cfg;
  auto base = lemma_for_g_baseline(h.g, h.partition, cfg, 1);
  auto demand = base.sizes;
  // Four vertices from pair 1 to pair 0, on both sides.
  demand[0] += 4;
  demand[1] += 4;
  demand[2] -= 4;
  demand[3] -= 4;
  auto fin = lemma_for_g_finish(h.g, base, demand, cfg, 2);
  EXPECT_TRUE(fin.alpha.alpha1);
  EXPECT_TRUE(fin.alpha.all()) << (fin.alpha.failures.empty() ? "" : fin.alpha.failures.front());
  expect_partition_of(fin.final_partition, h.g.n());
}

TEST(LemmaG, DemandAboveSlackIsParameterError) {
  HostInstance h = gen_super_regular_host(4, 50, 0.5, 1001);
  Config cfg;
  auto base = lemma_for_g_baseline(h.g, h.partition, cfg, 1);
  Config tight = cfg;
  tight.xi = 0.05;  // xi n = 20
  auto demand = base.sizes;
  demand[0] += 21;
  demand[2] -= 21;
  try {
    lemma_for_g_finish(h.g, base, demand, tight, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parameter);
    EXPECT_EQ(e.stage(), "demand");
  }
  auto bad_sum = base.sizes;
  bad_sum[0] += 1;
  EXPECT_EQ(kind_of([&] { lemma_for_g_finish(h.g, base, bad_sum, cfg, 1); }), ErrorKind::invalid_input);
}

TEST(LemmaG, ExtremalHostFailsAtANamedStage) {
  Graph g = gen_extremal_counterexample(40, 16);
  ClusterPartition p;
  for (int c = 0; c < 4; ++c) p.classes.push_back(range(10 * c, 10));
  try {
    lemma_for_g_baseline(g, p, Config{}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_FALSE(e.stage().empty());
  }
}

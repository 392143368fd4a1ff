#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "bwembed/homomorphism.hpp"
#include "bwembed/hostgen.hpp"
#include "support.hpp"

using namespace bwembed;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::internal;
}

// C_{2k} plus the chord between classes 2*first+1 and 2*second+1.
bool maps_to_edge(int x, int y, int k, Chord chord) {
  const int m = 2 * k;
  if (x == y) return false;
  if ((x + 1) % m == y || (y + 1) % m == x) return true;
  const int c1 = 2 * chord.first + 1, c2 = 2 * chord.second + 1;
  return (x == c1 && y == c2) || (x == c2 && y == c1);
}

bool in(const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

// Binomial(n, 1/2) mod k by summing coefficients directly.
std::vector<double> binomial_oracle(int n, int k) {
  std::vector<double> out(static_cast<std::size_t>(k), 0.0);
  double log2n = n * std::log(2.0);
  for (int j = 0; j <= n; ++j) {
    double lc = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
    out[static_cast<std::size_t>(j % k)] += std::exp(lc - log2n);
  }
  return out;
}

}  // namespace

TEST(Segments, PerfectMatchingStaysInsidePairs) {
  BandwidthH h = gen_matching_h(80);
  auto dec = chop_into_segments(h.h, h.ordering, h.side, 1, 4, 1);
  EXPECT_EQ(dec.m1, 4);
  EXPECT_EQ(dec.a.size(), 4u);
  EXPECT_LE(dec.window_s.size(), 12u);
  EXPECT_TRUE(certify_segments(h.h, dec).all());
  for (auto [u, v] : h.h.edges()) EXPECT_EQ(dec.segment[static_cast<std::size_t>(u)], dec.segment[static_cast<std::size_t>(v)]);
  for (int i = 0; i < 4; ++i) {
    const int size = static_cast<int>(dec.a[static_cast<std::size_t>(i)].size() + dec.b[static_cast<std::size_t>(i)].size());
    EXPECT_GE(size, 80 / 4 - 1);
    EXPECT_LE(size, 80 / 4 + 1);
  }
}

TEST(Segments, EdgelessGraphRepairsFreely) {
  const int n = 40;
  Graph h(n, {});
  std::vector<int> side(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) side[static_cast<std::size_t>(v)] = v % 2;
  auto dec = chop_into_segments(h, identity_ordering(n, 0), side, 1, 4, 1);
  auto cert = certify_segments(h, dec);
  EXPECT_TRUE(cert.all()) << cert.failure;
  EXPECT_TRUE(dec.s.empty());
  for (int i = 0; i < 4; ++i) {
    EXPECT_GE(static_cast<int>(dec.a[static_cast<std::size_t>(i)].size()), dec.min_segment);
    EXPECT_GE(static_cast<int>(dec.b[static_cast<std::size_t>(i)].size()), dec.min_segment);
  }
}

TEST(Segments, PathCrossingEdgesAreBoundaryEdges) {
  BandwidthH h = gen_path_h(100);
  auto dec = chop_into_segments(h.h, h.ordering, h.side, 1, 5, 2);
  auto cert = certify_segments(h.h, dec);
  EXPECT_TRUE(cert.all()) << cert.failure;
  int crossing = 0;
  for (auto [u, v] : h.h.edges()) {
    const int su = dec.segment[static_cast<std::size_t>(u)], sv = dec.segment[static_cast<std::size_t>(v)];
    if (su == sv) continue;
    ++crossing;
    EXPECT_TRUE(in(dec.s, u) && in(dec.s, v)) << u << "-" << v;
    // Crossing edges join B_i to A_{i+1}.
    const int bi = dec.side[static_cast<std::size_t>(u)] == 1 ? u : v;
    const int aj = bi == u ? v : u;
    EXPECT_EQ(dec.side[static_cast<std::size_t>(aj)], 0);
    EXPECT_EQ(dec.segment[static_cast<std::size_t>(aj)], dec.segment[static_cast<std::size_t>(bi)] + 1);
  }
  EXPECT_EQ(crossing, 4);
  EXPECT_LE(static_cast<int>(dec.window_s.size()), 3 * 5 * 1 + 5);
}

TEST(SelectM3, BalancedPicksSmallest) {
  EXPECT_EQ(select_m3({0, 0, 0, 0}, 0, 20, 0.9), 1);
}

TEST(SelectM3, AlternatingImbalances) {
  // Prefix sums 4, 0, 4, 0; the window is xi n / 20 = 0.9.
  EXPECT_EQ(select_m3({4, -4, 4, -4}, 0, 20, 0.9), 2);
}

TEST(SelectM3, NoIndexInWindow) {
  EXPECT_EQ(kind_of([] { select_m3({10, 10, 10, 10}, 0, 20, 0.9); }), ErrorKind::parameter);
}

TEST(GroupAndSplit, DrunkenBlocksSitAtTheJunction) {
  BandwidthH h = gen_matching_h(160);
  auto dec = chop_into_segments(h.h, h.ordering, h.side, 1, 8, 1);
  auto g = group_and_split(dec, 2, 2, 0.9);
  EXPECT_EQ(g.pairs_per_large, 4);
  ASSERT_EQ(g.drunken.size(), 2u);
  EXPECT_EQ(g.m3, 1);
  // j <= m3: last k2 pairs; j > m3: first k2 pairs.
  EXPECT_EQ(g.drunken[0], (std::pair<int, int>{2, 4}));
  EXPECT_EQ(g.sober[0], (std::pair<int, int>{0, 2}));
  EXPECT_EQ(g.drunken[1], (std::pair<int, int>{4, 6}));
  EXPECT_EQ(g.sober[1], (std::pair<int, int>{6, 8}));
  EXPECT_EQ(kind_of([&] { group_and_split(dec, 3, 2, 0.9); }), ErrorKind::parameter);
}

TEST(SoberAssign, ConsecutivePairs) {
  // Initial vertex 2 (pair 1) with k' = 4: pairs 1, 2; final vertex 5.
  auto r = sober_assign(2, 2, 4);
  EXPECT_EQ(r.pairs, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.final_vertex, 5);
  auto one = sober_assign(1, 6, 4);
  EXPECT_EQ(one.pairs, (std::vector<int>{3}));
  EXPECT_EQ(one.final_vertex, 7);
  auto wrap = sober_assign(2, 6, 4);
  EXPECT_EQ(wrap.pairs, (std::vector<int>{3, 0}));
  EXPECT_EQ(wrap.final_vertex, 1);
  EXPECT_EQ(kind_of([] { sober_assign(2, 3, 4); }), ErrorKind::invalid_input);
}

TEST(DrunkenAssign, ForcedCoins) {
  auto stay = drunken_replay(5, 2, 4, {0, 0, 0, 0});
  EXPECT_EQ(stay.final_vertex, 3);
  auto go = drunken_replay(4, 2, 4, {1, 1, 1});
  EXPECT_EQ(go.pairs, (std::vector<int>{1, 2, 3, 0}));
  EXPECT_EQ(go.final_vertex, 1);
  EXPECT_THROW(drunken_replay(4, 2, 4, {1, 1}), Error);
}

TEST(DrunkenAssign, ReplayMatchesLoggedCoins) {
  Rng rng(99);
  for (int run = 0; run < 50; ++run) {
    const int i0 = static_cast<int>(rng.below(4));
    auto r = drunken_assign(10, 2 * i0, 4, rng);
    ASSERT_EQ(r.coins.size(), 9u);
    const int advances = std::accumulate(r.coins.begin(), r.coins.end(), 0);
    EXPECT_EQ(r.final_vertex, 2 * ((i0 + advances) % 4) + 1);
    EXPECT_EQ(drunken_replay(10, 2 * i0, 4, r.coins).pairs, r.pairs);
  }
}

TEST(SeekingAssign, ArrivesAndHolds) {
  auto here = seeking_assign(3, 4, 5, 4);
  EXPECT_EQ(here.pairs, (std::vector<int>{2, 2, 2}));
  EXPECT_EQ(here.final_vertex, 5);
  // Start k'-1 = 3 steps before the target pair 1.
  auto far = seeking_assign(5, 4, 3, 4);
  EXPECT_EQ(far.pairs, (std::vector<int>{2, 3, 0, 1, 1}));
  EXPECT_EQ(far.final_vertex, 3);
  EXPECT_EQ(kind_of([] { seeking_assign(3, 4, 3, 4); }), ErrorKind::parameter);
}

TEST(BinomialResidues, Examples) {
  auto two = binomial_mod_distribution(4, 0.5, 2);
  EXPECT_NEAR(two[0], 0.5, 1e-12);
  EXPECT_NEAR(two[1], 0.5, 1e-12);
  auto zero = binomial_mod_distribution(0, 0.3, 3);
  EXPECT_EQ(zero, (std::vector<double>{1, 0, 0}));
  auto big = binomial_mod_distribution(5000, 0.5, 7);
  for (double x : big) {
    EXPECT_GE(x, 0.99 / 7);
    EXPECT_LE(x, 1.01 / 7);
  }
}

TEST(BinomialResidues, AgreesWithCoefficientSums) {
  for (int n : {1, 3, 10, 33, 100})
    for (int k : {1, 2, 4, 7}) {
      auto dp = binomial_mod_distribution(n, 0.5, k);
      auto ref = binomial_oracle(n, k);
      double total = 0;
      for (int r = 0; r < k; ++r) {
        EXPECT_NEAR(dp[static_cast<std::size_t>(r)], ref[static_cast<std::size_t>(r)], 1e-9) << n << " " << k;
        total += dp[static_cast<std::size_t>(r)];
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(CycleMap, PrefixSumsCoverAllClasses) {
  std::vector<int> sizes{60, 60, 60, 60};
  auto f1 = cycle_map_f1(sizes, 2, 240);
  ASSERT_FALSE(f1.empty());
  EXPECT_EQ(f1.size() % 2, 0u);
  // Odd-even pairs of C' land on odd-even pairs of C.
  for (std::size_t p = 0; 2 * p + 1 < f1.size(); ++p) {
    EXPECT_EQ(f1[2 * p] % 2, 0);
    EXPECT_EQ(f1[2 * p + 1], f1[2 * p] + 1);
  }
  std::vector<char> hit(4, 0);
  for (int c : f1) hit[static_cast<std::size_t>(c)] = 1;
  EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), 4);
}

namespace {

LemmaHParams schedule(const Config& cfg) { return {cfg.k1, cfg.m1, cfg.m2, cfg.k2}; }

void expect_sound(const Graph& h, const Homomorphism& hom, const std::vector<int>& sizes, Chord chord, double xi) {
  const int n = h.n();
  ASSERT_EQ(static_cast<int>(hom.f.size()), n);
  EXPECT_TRUE(hom.certificate.all()) << hom.certificate.failure;
  auto cert = check_hom_certificate(h, hom.f, hom.s, sizes, chord, xi);
  EXPECT_TRUE(cert.all()) << cert.failure;
  for (auto [u, v] : h.edges()) {
    const int fu = hom.f[static_cast<std::size_t>(u)], fv = hom.f[static_cast<std::size_t>(v)];
    EXPECT_TRUE(maps_to_edge(fu, fv, static_cast<int>(sizes.size()) / 2, chord)) << u << "-" << v;
    if (!in(hom.s, u) || !in(hom.s, v)) EXPECT_EQ(fu / 2, fv / 2) << u << "-" << v;
  }
  // Recounted tally equals the builder's and respects (beta2).
  std::vector<int> tally(sizes.size(), 0);
  for (int c : hom.f) ++tally[static_cast<std::size_t>(c)];
  EXPECT_EQ(tally, hom.certificate.tally);
  for (std::size_t c = 0; c < sizes.size(); ++c) EXPECT_LE(tally[c], sizes[c] + xi * n);
  EXPECT_LE(static_cast<double>(hom.s.size()), xi * n);
}

}  // namespace

TEST(BuildHomomorphism, PerfectMatching) {
  BandwidthH h = gen_matching_h(240);
  std::vector<int> sizes{60, 60, 60, 60};
  Config cfg;
  auto hom = build_homomorphism(h.h, h.ordering, h.side, sizes, Chord{0, 1}, cfg, 5, schedule(cfg));
  expect_sound(h.h, hom, sizes, Chord{0, 1}, cfg.xi);
  EXPECT_LE(hom.attempts, cfg.max_retries);
  EXPECT_EQ(static_cast<int>(hom.log.size()), hom.attempts);
}

TEST(BuildHomomorphism, EdgelessGraph) {
  const int n = 240;
  Graph h(n, {});
  std::vector<int> side(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) side[static_cast<std::size_t>(v)] = v % 2;
  std::vector<int> sizes{60, 60, 60, 60};
  Config cfg;
  auto hom = build_homomorphism(h, identity_ordering(n, 0), side, sizes, Chord{0, 1}, cfg, 3, schedule(cfg));
  expect_sound(h, hom, sizes, Chord{0, 1}, cfg.xi);
}

TEST(BuildHomomorphism, BandwidthGraphsAcrossSeeds) {
  Config cfg;
  int built = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    BandwidthH h = gen_bandwidth_bipartite_h(400, 3, 10, 2000 + seed);
    std::vector<int> sizes(8, 50);
    try {
      auto hom = build_homomorphism(h.h, h.ordering, h.side, sizes, Chord{0, 2}, cfg, seed, schedule(cfg));
      expect_sound(h.h, hom, sizes, Chord{0, 2}, cfg.xi);
      ++built;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::retry_exhausted) << e.what();
    }
  }
  EXPECT_GE(built, 6);
}

TEST(BuildHomomorphism, SameSeedSameMap) {
  BandwidthH h = gen_bandwidth_bipartite_h(400, 3, 10, 2001);
  std::vector<int> sizes(8, 50);
  Config cfg;
  auto a = build_homomorphism(h.h, h.ordering, h.side, sizes, Chord{0, 2}, cfg, 7, schedule(cfg));
  auto b = build_homomorphism(h.h, h.ordering, h.side, sizes, Chord{0, 2}, cfg, 7, schedule(cfg));
  EXPECT_EQ(a.f, b.f);
  EXPECT_EQ(a.attempts, b.attempts);
}

TEST(HomCertificate, DetectsBrokenMaps) {
  BandwidthH h = gen_matching_h(8);
  std::vector<int> sizes{2, 2, 2, 2};
  // Every matching edge on the pair {0, 1}: homomorphism, but (beta2) fails.
  std::vector<int> f(8);
  for (int v = 0; v < 8; ++v) f[static_cast<std::size_t>(v)] = v % 2;
  auto cert = check_hom_certificate(h.h, f, {}, sizes, Chord{0, 1}, 0.1);
  EXPECT_TRUE(cert.homomorphism);
  EXPECT_TRUE(cert.beta3);
  EXPECT_FALSE(cert.beta2);
  // An edge onto a non-edge of C breaks the homomorphism property.
  f = {0, 2, 2, 3, 0, 1, 2, 3};
  EXPECT_FALSE(check_hom_certificate(h.h, f, {}, sizes, Chord{0, 1}, 0.1).homomorphism);
}

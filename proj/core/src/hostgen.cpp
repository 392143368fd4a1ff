#include "bwembed/hostgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bwembed/common.hpp"

namespace bwembed {

HostInstance gen_cycle_blowup(int k, int s) {
  if (k < 3 || s < 1) fail(ErrorKind::invalid_input, "cycle blow-up needs k >= 3 and s >= 1");
  std::vector<Edge> e;
  for (int i = 0; i < k; ++i) {
    int j = (i + 1) % k;
    for (int x = 0; x < s; ++x)
      for (int y = 0; y < s; ++y) e.emplace_back(i * s + x, j * s + y);
  }
  HostInstance out{Graph(k * s, e), {}};
  for (int i = 0; i < k; ++i) {
    VertexSet c;
    for (int x = 0; x < s; ++x) c.push_back(i * s + x);
    out.partition.classes.push_back(std::move(c));
  }
  return out;
}

namespace {

// Random bipartite graph between two classes, stored as a dense matrix.
struct PairGraph {
  int cx, cy;  // class indices
  std::vector<std::vector<char>> m;
};

void sample_row(PairGraph& pg, int x, double d, Rng& rng) {
  for (auto& v : pg.m[static_cast<std::size_t>(x)]) v = rng.bernoulli(d) ? 1 : 0;
}

void sample_col(PairGraph& pg, int y, double d, Rng& rng) {
  for (auto& row : pg.m) row[static_cast<std::size_t>(y)] = rng.bernoulli(d) ? 1 : 0;
}

}  // namespace

HostInstance gen_super_regular_host(int k, int s, double d, std::uint64_t seed, const SuperRegularOptions& opt) {
  if (k < 2 || s < 1) fail(ErrorKind::invalid_input, "super-regular host needs k >= 2 and s >= 1");
  if (d <= 0 || d > 1) fail(ErrorKind::invalid_input, "density must lie in (0,1]");
  Chord ac = opt.a_chord.value_or(Chord{0, k / 2});
  Chord bc = opt.b_chord.value_or(Chord{1 % k, (1 + k / 2) % k});
  if (bc.first == bc.second) bc.second = (bc.second + 1) % k;
  Rng rng(seed);
  const int classes = 2 * k;
  std::vector<PairGraph> pairs;
  for (int c = 0; c < classes; ++c) pairs.push_back({c, (c + 1) % classes, {}});
  if (k >= 2) {
    pairs.push_back({2 * ac.first, 2 * ac.second, {}});
    pairs.push_back({2 * bc.first + 1, 2 * bc.second + 1, {}});
  }
  // A chord can coincide with a cycle pair for tiny k; generate each pair once.
  std::vector<PairGraph> unique;
  for (auto& p : pairs) {
    bool dup = false;
    for (auto& q : unique)
      if ((q.cx == p.cx && q.cy == p.cy) || (q.cx == p.cy && q.cy == p.cx)) dup = true;
    if (!dup && p.cx != p.cy) unique.push_back(p);
  }
  const int floor = static_cast<int>(std::ceil(opt.floor_fraction * d * s - 1e-9));
  for (auto& pg : unique) {
    pg.m.assign(static_cast<std::size_t>(s), std::vector<char>(static_cast<std::size_t>(s), 0));
    for (int x = 0; x < s; ++x) sample_row(pg, x, d, rng);
    for (int round = 0; round < opt.max_rounds; ++round) {
      bool changed = false;
      for (int x = 0; x < s; ++x) {
        int deg = 0;
        for (char v : pg.m[static_cast<std::size_t>(x)]) deg += v;
        if (deg < floor) { sample_row(pg, x, d, rng); changed = true; }
      }
      for (int y = 0; y < s; ++y) {
        int deg = 0;
        for (const auto& row : pg.m) deg += row[static_cast<std::size_t>(y)];
        if (deg < floor) { sample_col(pg, y, d, rng); changed = true; }
      }
      if (!changed) break;
    }
  }
  std::vector<Edge> e;
  for (const auto& pg : unique)
    for (int x = 0; x < s; ++x)
      for (int y = 0; y < s; ++y)
        if (pg.m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) e.emplace_back(pg.cx * s + x, pg.cy * s + y);
  HostInstance out{Graph(classes * s, e), {}};
  for (int c = 0; c < classes; ++c) {
    VertexSet cls;
    for (int x = 0; x < s; ++x) cls.push_back(c * s + x);
    out.partition.classes.push_back(std::move(cls));
  }
  out.partition.a_chord = ac;
  out.partition.b_chord = bc;
  return out;
}

Graph gen_extremal_counterexample(int n, int m) {
  if (m < 1 || n < 2 * m - 1) fail(ErrorKind::invalid_input, "extremal graph needs m >= 1 and n >= 2m-1");
  auto cls = [&](int v) { return v < m ? 1 : (v < 2 * m - 1 ? 2 : 3); };
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int a = cls(u), b = cls(v);
      if (a == 1 && b == 1) continue;
      if ((a == 1 && b == 3) || (a == 3 && b == 1)) continue;
      e.emplace_back(u, v);
    }
  return Graph(n, e);
}

Graph gen_random_graph(int n, double p, std::uint64_t seed) {
  if (n < 0 || p < 0 || p > 1) fail(ErrorKind::invalid_input, "random graph needs n >= 0 and p in [0,1]");
  Rng rng(seed);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) e.emplace_back(u, v);
  return Graph(n, e);
}

namespace {
BandwidthH with_parity_sides(Graph h, int bound) {
  BandwidthH out{std::move(h), identity_ordering(0, bound), {}};
  out.ordering = identity_ordering(out.h.n(), bound);
  out.side.resize(static_cast<std::size_t>(out.h.n()));
  for (int v = 0; v < out.h.n(); ++v) out.side[static_cast<std::size_t>(v)] = v % 2;
  return out;
}
}  // namespace

BandwidthH gen_bandwidth_bipartite_h(int n, int max_degree, int b, std::uint64_t seed, double p) {
  if (n < 1 || max_degree < 1 || b < 1) fail(ErrorKind::invalid_input, "bandwidth H needs n, max_degree, b >= 1");
  Rng rng(seed);
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v <= std::min(n - 1, u + b); v += 2) {
      if (deg[static_cast<std::size_t>(u)] >= max_degree) break;
      if (deg[static_cast<std::size_t>(v)] >= max_degree) continue;
      if (!rng.bernoulli(p)) continue;
      e.emplace_back(u, v);
      ++deg[static_cast<std::size_t>(u)];
      ++deg[static_cast<std::size_t>(v)];
    }
  return with_parity_sides(Graph(n, e), b);
}

BandwidthH gen_matching_h(int n) {
  if (n < 2 || n % 2 != 0) fail(ErrorKind::invalid_input, "perfect matching needs a positive even n");
  std::vector<Edge> e;
  for (int t = 0; t + 1 < n; t += 2) e.emplace_back(t, t + 1);
  return with_parity_sides(Graph(n, e), 1);
}

BandwidthH gen_path_h(int n) {
  if (n < 1) fail(ErrorKind::invalid_input, "path needs n >= 1");
  std::vector<Edge> e;
  for (int t = 0; t + 1 < n; ++t) e.emplace_back(t, t + 1);
  return with_parity_sides(Graph(n, e), 1);
}

}  // namespace bwembed

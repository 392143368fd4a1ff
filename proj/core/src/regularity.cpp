#include "bwembed/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace bwembed {

__extension__ typedef __int128 i128;

namespace {

void require_pair(const Graph& g, std::span<const int> a, std::span<const int> b) {
  if (a.empty() || b.empty()) fail(ErrorKind::invalid_input, "pair sides must be non-empty");
  std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
  for (int v : a) {
    if (v < 0 || v >= g.n()) fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " is not in the graph");
    if (in[static_cast<std::size_t>(v)]) fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " repeated in pair side");
    in[static_cast<std::size_t>(v)] = 1;
  }
  for (int v : b) {
    if (v < 0 || v >= g.n()) fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " is not in the graph");
    if (in[static_cast<std::size_t>(v)]) fail(ErrorKind::invalid_input, "pair sides share vertex " + std::to_string(v));
    in[static_cast<std::size_t>(v)] = 2;
  }
}

// Local view of the bipartite pair with a dense adjacency matrix.
struct PairView {
  std::vector<int> a, b;
  std::vector<std::vector<char>> adj;  // adj[i][j]: a[i] ~ b[j]
  std::int64_t e_ab = 0;

  PairView(const Graph& g, std::span<const int> sa, std::span<const int> sb) : a(sa.begin(), sa.end()), b(sb.begin(), sb.end()) {
    std::vector<int> index(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t j = 0; j < b.size(); ++j) index[static_cast<std::size_t>(b[j])] = static_cast<int>(j);
    adj.assign(a.size(), std::vector<char>(b.size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (int u : g.neighbors(a[i]))
        if (int j = index[static_cast<std::size_t>(u)]; j >= 0) {
          adj[i][static_cast<std::size_t>(j)] = 1;
          ++e_ab;
        }
  }
  bool edge(bool x_on_a, int xi, int oj) const {
    return x_on_a ? adj[static_cast<std::size_t>(xi)][static_cast<std::size_t>(oj)] : adj[static_cast<std::size_t>(oj)][static_cast<std::size_t>(xi)];
  }
  int side_size(bool on_a) const { return static_cast<int>(on_a ? a.size() : b.size()); }
};

struct Best {
  double dev = -1;
  bool violation = false;
  bool x_on_a = true;
  std::vector<int> x;  // local indices on the X side
  std::vector<int> y;  // local indices on the other side
};

struct Scorer {
  const PairView& pv;
  Fraction eps;
  int lo_a, lo_b;

  // |e_ab*x*y - e*a*b| * eps.den >= eps.num * a*b*x*y
  bool violates(std::int64_t e, int x, int y) const {
    const i128 ab = static_cast<i128>(pv.a.size()) * static_cast<i128>(pv.b.size());
    i128 diff = static_cast<i128>(pv.e_ab) * x * y - static_cast<i128>(e) * ab;
    if (diff < 0) diff = -diff;
    return diff * eps.den >= static_cast<i128>(eps.num) * ab * x * y;
  }
  double deviation(std::int64_t e, int x, int y) const {
    double full = static_cast<double>(pv.e_ab) / (static_cast<double>(pv.a.size()) * static_cast<double>(pv.b.size()));
    return std::abs(full - static_cast<double>(e) / (static_cast<double>(x) * y));
  }

  // Given X on one side, choose the best Y on the other side exactly: for a
  // fixed |Y| the extreme values of e(X,Y) come from the top or bottom degrees.
  Best best_for(bool x_on_a, const std::vector<int>& x) const {
    const int o = pv.side_size(!x_on_a);
    const int y_lo = x_on_a ? lo_b : lo_a;
    std::vector<int> deg(static_cast<std::size_t>(o), 0);
    for (int xi : x)
      for (int j = 0; j < o; ++j) deg[static_cast<std::size_t>(j)] += pv.edge(x_on_a, xi, j) ? 1 : 0;
    std::vector<int> order(static_cast<std::size_t>(o));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int p, int q) { return deg[static_cast<std::size_t>(p)] > deg[static_cast<std::size_t>(q)]; });
    Best best;
    best.x_on_a = x_on_a;
    best.x = x;
    std::int64_t top = 0, bottom = 0;
    int best_y = 0;
    bool best_high = true;
    const int xs = static_cast<int>(x.size());
    for (int y = 1; y <= o; ++y) {
      top += deg[static_cast<std::size_t>(order[static_cast<std::size_t>(y - 1)])];
      bottom += deg[static_cast<std::size_t>(order[static_cast<std::size_t>(o - y)])];
      if (y < y_lo) continue;
      for (int high = 0; high < 2; ++high) {
        std::int64_t e = high ? top : bottom;
        bool v = violates(e, xs, y);
        double dv = deviation(e, xs, y);
        if ((v && !best.violation) || (v == best.violation && dv > best.dev)) {
          best.violation = v;
          best.dev = dv;
          best_y = y;
          best_high = high != 0;
        }
      }
    }
    if (best_y > 0) {
      if (best_high) best.y.assign(order.begin(), order.begin() + best_y);
      else best.y.assign(order.end() - best_y, order.end());
      std::sort(best.y.begin(), best.y.end());
    }
    return best;
  }
};

bool better(const Best& cand, const Best& cur) {
  if (cand.violation != cur.violation) return cand.violation;
  return cand.dev > cur.dev;
}

RegularityVerdict finish(const PairView& pv, const Best& best, RegularityVerdict out) {
  out.max_deviation_seen = std::max(0.0, best.dev);
  if (!best.violation) return out;
  VertexSet x, y;
  const auto& xs = best.x_on_a ? pv.a : pv.b;
  const auto& ys = best.x_on_a ? pv.b : pv.a;
  for (int i : best.x) x.push_back(xs[static_cast<std::size_t>(i)]);
  for (int j : best.y) y.push_back(ys[static_cast<std::size_t>(j)]);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  out.regular = false;
  out.witness_deviation = best.dev;
  if (best.x_on_a) out.witness = std::make_pair(std::move(x), std::move(y));
  else out.witness = std::make_pair(std::move(y), std::move(x));
  return out;
}

}  // namespace

std::int64_t pair_edge_count(const Graph& g, std::span<const int> a, std::span<const int> b) {
  std::vector<char> in_b(static_cast<std::size_t>(g.n()), 0);
  for (int v : b) in_b[static_cast<std::size_t>(v)] = 1;
  std::int64_t e = 0;
  for (int v : a) e += g.degree_into(v, in_b);
  return e;
}

Fraction pair_density(const Graph& g, std::span<const int> a, std::span<const int> b) {
  require_pair(g, a, b);
  return Fraction::of(pair_edge_count(g, a, b), static_cast<std::int64_t>(a.size()) * static_cast<std::int64_t>(b.size()));
}

bool is_regularity_witness(const Graph& g, std::span<const int> a, std::span<const int> b, const VertexSet& x,
                           const VertexSet& y, Fraction eps) {
  if (x.empty() || y.empty()) return false;
  if (!eps.at_most(static_cast<std::int64_t>(x.size()), static_cast<std::int64_t>(a.size()))) return false;
  if (!eps.at_most(static_cast<std::int64_t>(y.size()), static_cast<std::int64_t>(b.size()))) return false;
  std::vector<char> in_a(static_cast<std::size_t>(g.n()), 0), in_b(static_cast<std::size_t>(g.n()), 0);
  for (int v : a) in_a[static_cast<std::size_t>(v)] = 1;
  for (int v : b) in_b[static_cast<std::size_t>(v)] = 1;
  for (int v : x)
    if (!in_a[static_cast<std::size_t>(v)]) return false;
  for (int v : y)
    if (!in_b[static_cast<std::size_t>(v)]) return false;
  const i128 e_ab = pair_edge_count(g, a, b);
  const i128 e_xy = pair_edge_count(g, x, y);
  const i128 ab = static_cast<i128>(a.size()) * static_cast<i128>(b.size());
  const i128 xy = static_cast<i128>(x.size()) * static_cast<i128>(y.size());
  i128 diff = e_ab * xy - e_xy * ab;
  if (diff < 0) diff = -diff;
  return diff * eps.den >= static_cast<i128>(eps.num) * ab * xy;
}

RegularityVerdict check_regular_pair(const Graph& g, std::span<const int> a, std::span<const int> b, double eps_d, double d_d,
                                     const PairCheckOptions& opt) {
  require_pair(g, a, b);
  const Fraction eps = Fraction::from_double(eps_d);
  const Fraction dmin = Fraction::from_double(d_d);
  PairView pv(g, a, b);
  RegularityVerdict out;
  out.density = Fraction::of(pv.e_ab, static_cast<std::int64_t>(pv.a.size()) * static_cast<std::int64_t>(pv.b.size()));
  const bool small = static_cast<int>(pv.a.size()) <= opt.exact_cap && static_cast<int>(pv.b.size()) <= opt.exact_cap;
  out.mode = opt.mode.value_or(small ? CheckMode::exact : CheckMode::heuristic);
  if (out.mode == CheckMode::sampled) out.mode = CheckMode::heuristic;
  if (out.density < dmin) {
    out.regular = false;
    out.below_density = true;
    return out;
  }
  Scorer sc{pv, eps, std::max<int>(1, static_cast<int>(eps.ceil_times(static_cast<std::int64_t>(pv.a.size())))),
            std::max<int>(1, static_cast<int>(eps.ceil_times(static_cast<std::int64_t>(pv.b.size()))))};
  if (sc.lo_a > static_cast<int>(pv.a.size()) || sc.lo_b > static_cast<int>(pv.b.size())) return out;

  Best best;
  if (out.mode == CheckMode::exact) {
    if (!small)
      fail(ErrorKind::invalid_input, "exact regularity check needs both sides <= " + std::to_string(opt.exact_cap));
    // Enumerate X over the smaller side; the optimal Y for each X is exact.
    const bool x_on_a = pv.a.size() <= pv.b.size();
    const int s = pv.side_size(x_on_a);
    const int lo = x_on_a ? sc.lo_a : sc.lo_b;
    std::vector<int> x;
    for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
      if (std::popcount(mask) < lo) continue;
      x.clear();
      for (int i = 0; i < s; ++i)
        if (mask >> i & 1u) x.push_back(i);
      Best cand = sc.best_for(x_on_a, x);
      if (better(cand, best)) best = std::move(cand);
      if (best.violation) break;
    }
    return finish(pv, best, out);
  }

  Rng rng(opt.seed);
  auto consider = [&](Best cand) {
    if (better(cand, best)) best = std::move(cand);
    return best.violation;
  };
  for (int side = 0; side < 2 && !best.violation; ++side) {
    const bool x_on_a = side == 0;
    const int s = pv.side_size(x_on_a);
    const int o = pv.side_size(!x_on_a);
    const int lo = x_on_a ? sc.lo_a : sc.lo_b;
    std::vector<int> deg(static_cast<std::size_t>(s), 0);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < o; ++j) deg[static_cast<std::size_t>(i)] += pv.edge(x_on_a, i, j) ? 1 : 0;
    std::vector<int> order(static_cast<std::size_t>(s));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int p, int q) { return deg[static_cast<std::size_t>(p)] < deg[static_cast<std::size_t>(q)]; });
    // Degree-outlier prefixes from both ends.
    for (int dir = 0; dir < 2 && !best.violation; ++dir) {
      std::vector<int> x;
      for (int t = 0; t < s && !best.violation; ++t) {
        x.push_back(order[static_cast<std::size_t>(dir == 0 ? t : s - 1 - t)]);
        if (static_cast<int>(x.size()) >= lo) consider(sc.best_for(x_on_a, x));
      }
    }
  }
  // Random seeds refined by alternating best responses.
  for (int seed = 0; seed < opt.random_seeds && !best.violation; ++seed) {
    bool x_on_a = rng.coin();
    const int s = pv.side_size(x_on_a);
    const int lo = x_on_a ? sc.lo_a : sc.lo_b;
    std::vector<int> x = rng.subset(s, rng.uniform_int(lo, s));
    Best cur = sc.best_for(x_on_a, x);
    for (int round = 0; round < opt.refine_rounds && !cur.violation && !cur.y.empty(); ++round) {
      Best flip = sc.best_for(!cur.x_on_a, cur.y);
      if (!better(flip, cur)) break;
      cur = std::move(flip);
    }
    consider(std::move(cur));
  }
  return finish(pv, best, out);
}

SuperRegularVerdict check_super_regular_pair(const Graph& g, std::span<const int> a, std::span<const int> b, double eps,
                                             double d, const PairCheckOptions& opt) {
  SuperRegularVerdict out;
  out.regularity = check_regular_pair(g, a, b, eps, d, opt);
  const Fraction dmin = Fraction::from_double(d);
  std::vector<int> sb(b.begin(), b.end()), sa(a.begin(), a.end());
  std::sort(sb.begin(), sb.end());
  std::sort(sa.begin(), sa.end());
  out.min_degree_a = static_cast<int>(b.size());
  out.min_degree_b = static_cast<int>(a.size());
  for (int v : sa) {
    int dv = g.degree_into(v, sb);
    out.min_degree_a = std::min(out.min_degree_a, dv);
    if (!dmin.at_most(dv, static_cast<std::int64_t>(b.size()))) out.low_degree_a.push_back(v);
  }
  for (int v : sb) {
    int dv = g.degree_into(v, sa);
    out.min_degree_b = std::min(out.min_degree_b, dv);
    if (!dmin.at_most(dv, static_cast<std::int64_t>(a.size()))) out.low_degree_b.push_back(v);
  }
  out.super_regular = out.regularity.regular && out.low_degree_a.empty() && out.low_degree_b.empty();
  return out;
}

ReducedGraph build_reduced_graph(const Graph& g, const std::vector<VertexSet>& classes, double eps, double d,
                                 const PairCheckOptions& opt) {
  ReducedGraph out;
  out.eps = eps;
  out.d = d;
  std::vector<Edge> edges;
  const int k = static_cast<int>(classes.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      PairCheckOptions o = opt;
      o.seed = mix_seed(opt.seed, static_cast<std::uint64_t>(i * k + j));
      RegularityVerdict v = check_regular_pair(g, classes[static_cast<std::size_t>(i)], classes[static_cast<std::size_t>(j)], eps, d, o);
      if (v.mode == CheckMode::heuristic && !v.below_density) out.heuristic = true;
      if (v.regular) edges.emplace_back(i, j);
    }
  out.r = Graph(k, edges);
  return out;
}

PerturbationBound perturbation_bound(double eps, double d, double alpha, double beta) {
  if (eps < 0 || d < 0 || alpha < 0 || beta < 0) fail(ErrorKind::invalid_input, "perturbation parameters must be non-negative");
  PerturbationBound out;
  out.eps = eps + 3.0 * (std::sqrt(alpha) + std::sqrt(beta));
  out.d = d - 2.0 * (alpha + beta);
  if (out.eps > 1.0) { out.eps = 1.0; out.clamped = true; }
  if (out.d < 0.0) { out.d = 0.0; out.clamped = true; }
  return out;
}

}  // namespace bwembed

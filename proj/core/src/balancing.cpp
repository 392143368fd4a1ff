#include <algorithm>
#include <cmath>
#include <string>

#include "bwembed/common.hpp"
#include "bwembed/partition_engine.hpp"

namespace bwembed {

namespace {

int partner_class(int c) { return c ^ 1; }

int count_into(const Graph& g, int v, const std::vector<int>& owner, int cls) {
  int c = 0;
  for (int u : g.neighbors(v))
    if (owner[static_cast<std::size_t>(u)] == cls) ++c;
  return c;
}

std::vector<VertexSet> classes_from_owner(const std::vector<int>& owner, int class_count) {
  std::vector<VertexSet> out(static_cast<std::size_t>(class_count));
  for (int v = 0; v < static_cast<int>(owner.size()); ++v)
    if (owner[static_cast<std::size_t>(v)] >= 0) out[static_cast<std::size_t>(owner[static_cast<std::size_t>(v)])].push_back(v);
  return out;
}

int min_class_size(const ClusterPartition& p) {
  auto s = p.sizes();
  return *std::min_element(s.begin(), s.end());
}

}  // namespace

ExceptionalResult assign_exceptional_vertices(const Graph& g, const ClusterPartition& p, const Config& cfg) {
  p.validate(g.n());
  ExceptionalResult out;
  out.partition = p;
  out.partition.exceptional.clear();
  const int classes = p.class_count();
  const int mp = min_class_size(p);
  out.cluster_size = mp;
  const Fraction need = Fraction::from_double(cfg.eta / 4);
  const Fraction cap = Fraction::from_double(8 * cfg.eps_prime / cfg.eta);
  out.threshold = need.ceil_times(mp);
  out.full_cap = cap.ceil_times(mp);

  const auto owner = p.owner(g.n());
  std::vector<std::int64_t> assigned(static_cast<std::size_t>(classes), 0);
  VertexSet order = p.exceptional;
  std::sort(order.begin(), order.end());
  for (int x : order) {
    std::vector<int> cnt(static_cast<std::size_t>(classes), 0);
    for (int u : g.neighbors(x))
      if (owner[static_cast<std::size_t>(u)] >= 0) ++cnt[static_cast<std::size_t>(owner[static_cast<std::size_t>(u)])];
    int best = -1;
    for (int v = 0; v < classes; ++v) {
      // Fullness is judged on the class that would receive x.
      if (cap.at_most(assigned[static_cast<std::size_t>(partner_class(v))], mp)) continue;
      if (best < 0 || cnt[static_cast<std::size_t>(v)] > cnt[static_cast<std::size_t>(best)]) best = v;
    }
    if (best < 0 || !need.at_most(cnt[static_cast<std::size_t>(best)], mp))
      fail(ErrorKind::assignment, "exceptional vertex " + std::to_string(x) + " has no non-full class with at least " +
                                      std::to_string(out.threshold) + " neighbours");
    const int target = partner_class(best);
    ++assigned[static_cast<std::size_t>(target)];
    out.partition.classes[static_cast<std::size_t>(target)].push_back(x);
    out.placements.push_back({x, best, target, cnt[static_cast<std::size_t>(best)]});
  }
  for (auto& c : out.partition.classes) std::sort(c.begin(), c.end());
  return out;
}

std::int64_t imbalance_sigma(const ClusterPartition& p, Fraction lambda, int n) {
  std::int64_t s = 0;
  for (int i = 0; i < p.k(); ++i) {
    std::int64_t d = std::abs(static_cast<std::int64_t>(p.a(i).size()) - static_cast<std::int64_t>(p.b(i).size()));
    if (lambda.below(d, n)) s += d;
  }
  return s;
}

BalanceResult balance_partition(const Graph& g, const ClusterPartition& p, const Graph& r, const Config& cfg) {
  p.validate(g.n());
  if (!p.exceptional.empty()) fail(ErrorKind::invalid_input, "balancing expects the exceptional set to be assigned already");
  const int n = g.n();
  const int classes = p.class_count();
  const int k = p.k();
  if (r.n() != classes) fail(ErrorKind::invalid_input, "reduced graph size does not match the class count");
  for (int i = 0; i < k; ++i)
    if (!r.has_edge(2 * i, 2 * i + 1))
      fail(ErrorKind::invalid_input, "matching edge A_" + std::to_string(i) + "B_" + std::to_string(i) + " is missing from R");

  const Fraction lam = Fraction::from_double(cfg.lambda);
  const std::int64_t lam_floor = lam.floor_times(n);
  const int mp = min_class_size(p);
  const std::int64_t wc_need = Fraction::from_double(cfg.d_prime / 8).ceil_times(mp);
  const double drift_cap = std::cbrt(cfg.eps_prime) * mp - cfg.lambda * n;

  BalanceResult res;
  res.per_edge = static_cast<int>((lam.ceil_times(n) + 1) / 2);
  res.sigma_initial = imbalance_sigma(p, lam, n);
  res.paper_step_bound = 4 * cfg.eps_prime / (cfg.eta * cfg.lambda);
  res.active_floor = static_cast<int>(std::ceil((1 - cfg.nu / 12) * classes - 1e-9));
  {
    const std::int64_t ln_ceil = lam.ceil_times(n);
    res.step_limit = ln_ceil > 0 ? (res.sigma_initial + ln_ceil - 1) / ln_ceil : 0;
  }
  if (lam_floor < 2) fail(ErrorKind::parameter, "lambda*n must be at least 2 for integral balancing moves");

  const auto orig = p.owner(n);
  std::vector<int> cur = orig;
  std::vector<int> size(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) size[static_cast<std::size_t>(c)] = static_cast<int>(p.classes[static_cast<std::size_t>(c)].size());
  std::vector<char> active(static_cast<std::size_t>(k), 1);

  auto imbalance = [&](int i) { return std::abs(size[static_cast<std::size_t>(2 * i)] - size[static_cast<std::size_t>(2 * i + 1)]); };
  auto sigma = [&] {
    std::int64_t s = 0;
    for (int i = 0; i < k; ++i)
      if (lam.below(imbalance(i), n)) s += imbalance(i);
    return s;
  };
  // |V* \ V| and |V \ V*| for class c.
  auto drift = [&](int c) {
    int gained = 0, lost = 0;
    for (int v = 0; v < n; ++v) {
      bool now = cur[static_cast<std::size_t>(v)] == c, before = orig[static_cast<std::size_t>(v)] == c;
      if (now && !before) ++gained;
      if (before && !now) ++lost;
    }
    return std::max(gained, lost);
  };

  std::int64_t guard = 0;
  while (true) {
    std::vector<int> retired_now;
    for (int i = 0; i < k; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      if (drift(2 * i) >= drift_cap - 1e-9 || drift(2 * i + 1) >= drift_cap - 1e-9) {
        active[static_cast<std::size_t>(i)] = 0;
        retired_now.push_back(i);
        res.retired_pairs.push_back(i);
        // A retired pair must already be balanced; otherwise the drift
        // accounting of the step bound has been violated.
        if (lam.below(imbalance(i), n))
          fail(ErrorKind::balancing, "pair " + std::to_string(i) + " drifted out of R* while still imbalanced by " +
                                         std::to_string(imbalance(i)));
      }
    }
    std::vector<int> act;
    for (int i = 0; i < k; ++i)
      if (active[static_cast<std::size_t>(i)]) act.push_back(i);
    if (2 * static_cast<int>(act.size()) < res.active_floor)
      fail(ErrorKind::balancing, "R* shrank to " + std::to_string(2 * act.size()) + " clusters, below the floor of " +
                                     std::to_string(res.active_floor));

    // Local indices in R*: pair act[t] -> clusters 2t, 2t+1.
    std::vector<int> local(static_cast<std::size_t>(classes), -1);
    VertexSet keep;
    for (std::size_t t = 0; t < act.size(); ++t) {
      keep.push_back(2 * act[t]);
      keep.push_back(2 * act[t] + 1);
      local[static_cast<std::size_t>(2 * act[t])] = static_cast<int>(2 * t);
      local[static_cast<std::size_t>(2 * act[t] + 1)] = static_cast<int>(2 * t + 1);
    }
    VertexSet s_local;
    for (int i : act) {
      int d = size[static_cast<std::size_t>(2 * i)] - size[static_cast<std::size_t>(2 * i + 1)];
      if (!lam.below(std::abs(d), n)) continue;
      s_local.push_back(local[static_cast<std::size_t>(d > 0 ? 2 * i : 2 * i + 1)]);
    }
    if (s_local.empty()) break;
    if (++guard > res.step_limit + 1)
      fail(ErrorKind::internal, "balancing exceeded its step limit of " + std::to_string(res.step_limit));
    std::sort(s_local.begin(), s_local.end());

    Graph rstar = r.induced(keep);
    std::vector<Edge> mpairs;
    for (std::size_t t = 0; t < act.size(); ++t) mpairs.emplace_back(static_cast<int>(2 * t), static_cast<int>(2 * t + 1));
    Matching mstar(rstar, mpairs);
    const int start = s_local.front();
    auto found = find_closed_shifted_walk(rstar, mstar, start, cfg.nu / 4);
    if (!found.walk)
      fail(ErrorKind::balancing, "no closed shifted walk of length <= " + std::to_string(found.bound) + " from cluster " +
                                     std::to_string(keep[static_cast<std::size_t>(start)]));
    Walk w = simplify_walk(rstar, mstar, *found.walk);
    w = purify_walk(mstar, s_local, w);
    for (int& v : w) v = keep[static_cast<std::size_t>(v)];

    BalanceStep step;
    step.walk = w;
    step.retired_pairs = retired_now;
    step.sigma_before = sigma();
    const int first_pair = w.front() / 2, last_pair = w.back() / 2;
    const std::int64_t q0 = res.per_edge;
    std::int64_t q;
    if (w.front() == w.back()) {
      q = std::min<std::int64_t>(q0, (imbalance(first_pair) + lam_floor) / 4);
    } else {
      q = std::min<std::int64_t>({q0, imbalance(first_pair) / 2, imbalance(last_pair) / 2});
    }
    if (q < 1) fail(ErrorKind::internal, "balancing step would move no vertices");
    step.moved_per_edge = static_cast<int>(q);

    auto move_batch = [&](int from, int to, int reference) {
      std::vector<std::pair<int, int>> cand;  // (-degree, vertex)
      for (int v = 0; v < n; ++v) {
        if (cur[static_cast<std::size_t>(v)] != from) continue;
        int deg = count_into(g, v, orig, reference);
        if (deg >= wc_need) cand.emplace_back(-deg, v);
      }
      if (static_cast<std::int64_t>(cand.size()) < q)
        fail(ErrorKind::balancing, "cluster " + std::to_string(from) + " has only " + std::to_string(cand.size()) +
                                       " vertices well connected to cluster " + std::to_string(reference) + ", need " +
                                       std::to_string(q));
      std::sort(cand.begin(), cand.end());
      for (std::int64_t t = 0; t < q; ++t) {
        int v = cand[static_cast<std::size_t>(t)].second;
        cur[static_cast<std::size_t>(v)] = to;
        --size[static_cast<std::size_t>(from)];
        ++size[static_cast<std::size_t>(to)];
        step.moves.push_back({v, from, to, reference, -cand[static_cast<std::size_t>(t)].first, wc_need});
      }
    };
    const int steps = static_cast<int>(w.size()) / 2;
    for (int i = 0; i < steps; ++i) {
      int x = w[static_cast<std::size_t>(2 * i)], y = w[static_cast<std::size_t>(2 * i + 1)];
      move_batch(x, partner_class(y), y);
    }
    for (int i = steps - 1; i >= 0; --i) {
      int x = w[static_cast<std::size_t>(2 * i)], y = w[static_cast<std::size_t>(2 * i + 1)];
      move_batch(y, partner_class(x), x);
    }
    step.sigma_after = sigma();
    if (!lam.at_most(step.sigma_before - step.sigma_after, n))
      fail(ErrorKind::internal, "balancing step decreased the imbalance sum by only " +
                                    std::to_string(step.sigma_before - step.sigma_after));
    res.steps.push_back(std::move(step));
  }

  res.partition.classes = classes_from_owner(cur, classes);
  res.partition.a_chord = p.a_chord;
  res.partition.b_chord = p.b_chord;
  return res;
}

}  // namespace bwembed

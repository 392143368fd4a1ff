#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bwembed/common.hpp"
#include "bwembed/partition_engine.hpp"

namespace bwembed {

namespace {

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw Error(e.kind(), e.what(), stage);
  }
}

PairCheckOptions pair_options(const Config& cfg, std::uint64_t seed) {
  PairCheckOptions o;
  o.exact_cap = cfg.pair_exact_cap;
  o.random_seeds = cfg.pair_random_seeds;
  o.seed = seed;
  return o;
}

Graph relabel_graph(const Graph& r, const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) pos[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
  std::vector<Edge> e;
  for (auto [u, v] : r.edges()) e.emplace_back(pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(v)]);
  return Graph(r.n(), e);
}

// Moves the vertices of each matched pair that have fewer than
// ceil(d'/2 |partner|) neighbours in the partner class to the exceptional set.
void trim_matched_pairs(const Graph& g, ClusterPartition& p, const Config& cfg) {
  const Fraction half = Fraction::from_double(cfg.d_prime / 2);
  const Fraction cap = Fraction::from_double(cfg.eps_prime);
  std::vector<VertexSet> kept(p.classes.size());
  for (int c = 0; c < p.class_count(); ++c) {
    const auto& mine = p.classes[static_cast<std::size_t>(c)];
    const auto& other = p.classes[static_cast<std::size_t>(c ^ 1)];
    const std::int64_t need = half.ceil_times(static_cast<std::int64_t>(other.size()));
    std::int64_t dropped = 0;
    for (int v : mine) {
      if (g.degree_into(v, other) >= need) {
        kept[static_cast<std::size_t>(c)].push_back(v);
      } else {
        p.exceptional.push_back(v);
        ++dropped;
      }
    }
    if (cap.below(dropped, static_cast<std::int64_t>(mine.size())))
      fail(ErrorKind::structural, "class " + std::to_string(c) + " has " + std::to_string(dropped) +
                                      " vertices of low degree into its partner, more than eps'*|class|");
  }
  p.classes = std::move(kept);
  std::sort(p.exceptional.begin(), p.exceptional.end());
}

}  // namespace

Graph pure_subgraph(const Graph& g, const ClusterPartition& p, const Graph& r) {
  const auto owner = p.owner(g.n());
  return g.filter_edges([&](int u, int v) {
    int a = owner[static_cast<std::size_t>(u)], b = owner[static_cast<std::size_t>(v)];
    return a >= 0 && b >= 0 && a != b && r.has_edge(a, b);
  });
}

LemmaGBaseline lemma_for_g_baseline(const Graph& g, const ClusterPartition& injected, const Config& cfg, std::uint64_t seed) {
  cfg.validate();
  staged("input", [&] { injected.validate(g.n()); return 0; });
  LemmaGBaseline out;
  const auto popt = pair_options(cfg, mix_seed(seed, 1));

  out.reduced = staged("reduced-graph", [&] { return build_reduced_graph(g, injected.classes, cfg.eps_prime, cfg.d_prime, popt); });
  out.cycle = staged("hamilton", [&] { return find_hamilton_cycle_and_chords(out.reduced.r); });
  ClusterPartition p = relabel_along_cycle(injected, out.cycle);
  const Graph r = relabel_graph(out.reduced.r, out.cycle.order);
  out.reduced.r = r;

  staged("trim", [&] { trim_matched_pairs(g, p, cfg); return 0; });
  out.exceptional = staged("exceptional", [&] { return assign_exceptional_vertices(g, p, cfg); });
  out.balance = staged("balancing", [&] { return balance_partition(g, out.exceptional.partition, r, cfg); });
  out.partition = out.balance.partition;
  out.sizes = out.partition.sizes();

  out.pure = pure_subgraph(g, out.partition, r);
  return out;
}

AlphaReport verify_alpha(const Graph& g, const ClusterPartition& p, const std::vector<int>& demand, double eps, double d,
                         const PairCheckOptions& opt) {
  AlphaReport rep;
  const int k = p.k();
  const int classes = p.class_count();
  auto note = [&](bool ok, const std::string& what) {
    if (!ok) rep.failures.push_back(what);
    return ok;
  };
  auto sizes = p.sizes();
  rep.alpha1 = note(sizes == demand, "(alpha1) class sizes differ from the demanded sizes");
  auto track = [&](const RegularityVerdict& v) {
    if (v.mode != CheckMode::exact) rep.heuristic = true;
    return v.regular;
  };
  rep.alpha2 = true;
  for (int i = 0; i < k; ++i) {
    auto v = check_super_regular_pair(g, p.a(i), p.b(i), eps, d, opt);
    track(v.regularity);
    if (!v.super_regular) rep.alpha2 = note(false, "(alpha2) pair (A_" + std::to_string(i) + ",B_" + std::to_string(i) + ") is not super-regular");
  }
  rep.alpha3 = true;
  for (int i = 0; i < k; ++i) {
    const auto& next = p.classes[static_cast<std::size_t>((2 * i + 2) % classes)];
    if (!track(check_regular_pair(g, p.b(i), next, eps, d, opt)))
      rep.alpha3 = note(false, "(alpha3) pair (B_" + std::to_string(i) + ",A_" + std::to_string((i + 1) % k) + ") is not regular");
  }
  auto chord = [&](const std::optional<Chord>& ch, int parity, const char* tag) {
    if (!ch) return note(false, std::string(tag) + " chord is missing");
    bool ok = track(check_regular_pair(g, p.classes[static_cast<std::size_t>(2 * ch->first + parity)],
                                       p.classes[static_cast<std::size_t>(2 * ch->second + parity)], eps, d, opt));
    return note(ok, std::string(tag) + " chord pair is not regular");
  };
  rep.alpha4 = chord(p.a_chord, 0, "(alpha4) A");
  rep.alpha5 = chord(p.b_chord, 1, "(alpha5) B");
  return rep;
}

LemmaGResult lemma_for_g_finish(const Graph& g, const LemmaGBaseline& base, const std::vector<int>& demand, const Config& cfg,
                                std::uint64_t seed) {
  const int n = g.n();
  const int classes = base.partition.class_count();
  const int k = base.partition.k();
  if (static_cast<int>(demand.size()) != classes)
    throw Error(ErrorKind::invalid_input, "expected " + std::to_string(classes) + " demanded sizes, got " + std::to_string(demand.size()),
                "demand");
  std::int64_t total = 0;
  for (int x : demand) {
    if (x < 0) throw Error(ErrorKind::invalid_input, "demanded sizes must be non-negative", "demand");
    total += x;
  }
  if (total != n)
    throw Error(ErrorKind::invalid_input, "demanded sizes sum to " + std::to_string(total) + ", not n = " + std::to_string(n), "demand");
  const Fraction xif = Fraction::from_double(cfg.xi);
  for (int c = 0; c < classes; ++c) {
    std::int64_t extra = demand[static_cast<std::size_t>(c)] - base.sizes[static_cast<std::size_t>(c)];
    if (extra > 0 && xif.below(extra, n))
      throw Error(ErrorKind::parameter, "demanded size of class " + std::to_string(c) + " exceeds n_i + xi*n", "demand");
  }

  LemmaGResult out;
  out.baseline = base;
  const auto popt = pair_options(cfg, mix_seed(seed, 2));
  // The baseline pairs are certified at (eps'^(1/10), d'/10); the mobility
  // slack is 2k xi because every |a_i| is at most 2k xi n.
  const double eps_in = std::min(0.999, std::pow(cfg.eps_prime, 0.1));
  const double d_in = cfg.d_prime / 10;
  MobilityOptions mopt;
  mopt.pair = popt;
  out.mobility = staged("mobility", [&] {
    return mobility_redistribute(g, base.partition, demand, eps_in, d_in, std::min(1.0, 2 * k * cfg.xi), mopt);
  });
  out.final_partition = out.mobility.partition;
  // Pairs along R-edges have the same edges in G and in G'.
  out.alpha = verify_alpha(g, out.final_partition, demand, cfg.eps, cfg.d, popt);
  out.pure = pure_subgraph(g, out.final_partition, base.reduced.r);
  return out;
}

}  // namespace bwembed

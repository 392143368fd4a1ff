#include "bwembed/pipeline.hpp"

#include <chrono>

namespace bwembed {

namespace {

class StageRunner {
 public:
  explicit StageRunner(PipelineReport& rep) : rep_(rep) {}

  // Runs f, records it under `name` and returns false once a stage failed.
  template <class F>
  bool run(const std::string& name, F&& f) {
    if (stopped_) return false;
    auto t0 = std::chrono::steady_clock::now();
    Json entry{{"name", name}};
    partial = nullptr;
    try {
      Json data = f();
      entry["ok"] = true;
      if (!data.is_null()) entry["data"] = std::move(data);
    } catch (const Error& e) {
      entry["ok"] = false;
      std::string stage = e.stage().empty() ? name : name + "/" + e.stage();
      entry["error"] = {{"kind", std::string(to_string(e.kind()))}, {"stage", stage}, {"message", e.what()}};
      rep_.failed_stage = stage;
      rep_.error = e.kind();
      rep_.certified_failure = e.certified();
      rep_.message = e.what();
      stopped_ = true;
      if (!partial.is_null()) entry["data"] = std::move(partial);
    } catch (const std::exception& e) {
      entry["ok"] = false;
      entry["error"] = {{"kind", "internal"}, {"stage", name}, {"message", e.what()}};
      rep_.failed_stage = name;
      rep_.error = ErrorKind::internal;
      rep_.message = e.what();
      stopped_ = true;
    }
    entry["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    stages_.push_back(std::move(entry));
    return !stopped_;
  }

  Json stages() const { return stages_; }

  // Diagnostics a stage may leave behind before it fails.
  Json partial;

 private:
  PipelineReport& rep_;
  Json stages_ = Json::array();
  bool stopped_ = false;
};

}  // namespace

PipelineReport run_full_pipeline(const Graph& g, const ClusterPartition& host_partition, const HBundle& hb, const Config& cfg,
                                 std::uint64_t seed, const PipelineOptions& opt) {
  PipelineReport rep;
  StageRunner st(rep);
  const std::uint64_t seed_g = mix_seed(seed, 1), seed_h = mix_seed(seed, 2), seed_fin = mix_seed(seed, 3),
                      seed_emb = mix_seed(seed, 4), seed_exp = mix_seed(seed, 5);
  const Graph& h = hb.h;
  const int n = g.n();

  st.run("input", [&] {
    cfg.validate();
    if (h.n() != n) fail(ErrorKind::invalid_input, "H has " + std::to_string(h.n()) + " vertices, G has " + std::to_string(n));
    int bw = verify_bandwidth_ordering(h, hb.ordering);
    if (static_cast<int>(hb.side.size()) != n) fail(ErrorKind::invalid_input, "bipartition of H has the wrong length");
    for (auto [u, v] : h.edges())
      if (hb.side[static_cast<std::size_t>(u)] == hb.side[static_cast<std::size_t>(v)])
        fail(ErrorKind::invalid_input, "the bipartition of H is not proper at edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    return Json{{"n", n}, {"host_edges", g.edge_count()}, {"h_edges", h.edge_count()}, {"bandwidth", bw}, {"max_degree_h", h.max_degree()}};
  });

  if (opt.check_host)
    st.run("host-checks", [&] {
      const Fraction eta = Fraction::from_double(cfg.eta);
      if (!eta.at_most(g.min_degree(), n))
        fail(ErrorKind::feasibility, "minimum degree " + std::to_string(g.min_degree()) + " is below eta*n");
      ExpanderOptions eo;
      eo.mode = n <= cfg.expander_exact_cap ? CheckMode::exact : CheckMode::sampled;
      eo.exact_cap = cfg.expander_exact_cap;
      eo.trials = cfg.expander_trials;
      eo.seed = seed_exp;
      auto v = check_robust_expander(g, cfg.nu, cfg.tau, eo);
      if (!v.holds) fail(ErrorKind::feasibility, "G is not a robust (nu,tau)-expander: a violating set was found");
      return Json{{"min_degree", g.min_degree()}, {"expander", to_json(v)}};
    });

  LemmaGBaseline base;
  st.run("lemma-g-baseline", [&] {
    base = lemma_for_g_baseline(g, host_partition, cfg, seed_g);
    return Json{{"sizes", base.sizes}, {"cycle", base.cycle.order}};
  });

  Homomorphism hom;
  st.run("homomorphism", [&] {
    if (!base.partition.b_chord) fail(ErrorKind::structural, "the host partition carries no B-chord");
    LemmaHParams p{cfg.k1, cfg.m1, cfg.m2, cfg.k2};
    hom = build_homomorphism(h, hb.ordering, hb.side, base.sizes, *base.partition.b_chord, cfg, seed_h, p);
    return to_json(hom, opt.coin_logs);
  });

  LemmaGResult fin;
  st.run("lemma-g-finish", [&] {
    fin = lemma_for_g_finish(g, base, hom.certificate.tally, cfg, seed_fin);
    if (!fin.alpha.all()) {
      st.partial = to_json(fin);
      std::string why = fin.alpha.failures.empty() ? "unknown" : fin.alpha.failures.front();
      fail(ErrorKind::validation, "alpha conditions fail after resizing: " + why);
    }
    return to_json(fin);
  });

  std::vector<VertexSet> w;
  Graph r_prime;
  CompatibilityReport compat;
  st.run("compatibility", [&] {
    const auto& vp = fin.final_partition;
    const int classes = vp.class_count();
    w = classes_from_map(hom.f, classes);
    PairCheckOptions po;
    po.exact_cap = cfg.pair_exact_cap;
    po.random_seeds = cfg.pair_random_seeds;
    po.seed = mix_seed(seed_fin, 17);
    auto reduced = build_reduced_graph(fin.pure, vp.classes, cfg.eps, cfg.d, po);
    r_prime = matching_pairs_graph(classes);
    for (auto [u, v] : r_prime.edges())
      if (!reduced.r.has_edge(u, v))
        fail(ErrorKind::validation, "matched classes " + std::to_string(u) + "," + std::to_string(v) + " are not adjacent in R");
    compat = check_compatibility(h, w, vp.sizes(), reduced.r, r_prime, cfg.eps);
    Json j = to_json(compat);
    j["reduced_edges"] = graph_to_json(reduced.r)["edges"];
    j["reduced_heuristic"] = reduced.heuristic;
    if (!compat.all()) {
      st.partial = j;
      std::string which = !compat.gamma1 ? "gamma1" : !compat.gamma2 ? "gamma2" : "gamma3";
      fail(ErrorKind::validation, "(" + which + ") fails");
    }
    return j;
  });

  Embedding emb;
  st.run("embedding", [&] {
    VertexSet constrained;
    for (const auto& s : compat.s_sets) constrained.insert(constrained.end(), s.begin(), s.end());
    for (const auto& t : compat.t_sets) constrained.insert(constrained.end(), t.begin(), t.end());
    constrained = normalize_set(std::move(constrained), n);
    EmbedOptions eo;
    eo.budget_factor = cfg.embed_budget_factor;
    eo.seed = seed_emb;
    emb = embed_blowup(h, w, fin.pure, fin.final_partition.classes, r_prime, constrained, eo);
    return Json{{"restarts", emb.restarts}, {"placements", emb.placements}, {"greedy_placed", emb.greedy_placed}, {"forced", emb.forced}};
  });

  st.run("verify", [&] {
    auto v = verify_embedding(h, g, emb.phi);
    if (!v.holds) fail(ErrorKind::internal, "embedding failed verification: " + v.failure);
    const auto owner = fin.final_partition.owner(n);
    for (int x = 0; x < n; ++x)
      if (owner[static_cast<std::size_t>(emb.phi[static_cast<std::size_t>(x)])] != hom.f[static_cast<std::size_t>(x)])
        fail(ErrorKind::internal, "phi(" + std::to_string(x) + ") leaves its class");
    rep.phi = emb.phi;
    rep.success = true;
    return to_json(v);
  });

  Json cfg_json = Json::object();
  for (const auto& [k, v] : cfg.to_map()) cfg_json[k] = v;
  rep.json = Json{{"success", rep.success},
                  {"seeds",
                   {{"root", seed},
                    {"lemma_g", seed_g},
                    {"homomorphism", seed_h},
                    {"lemma_g_finish", seed_fin},
                    {"embedding", seed_emb},
                    {"expander", seed_exp}}},
                  {"config", cfg_json},
                  {"stages", st.stages()}};
  if (!rep.success) {
    rep.json["failed_stage"] = rep.failed_stage;
    rep.json["certified_failure"] = rep.certified_failure;
    rep.json["message"] = rep.message;
  } else {
    rep.json["phi"] = rep.phi;
  }
  return rep;
}

}  // namespace bwembed

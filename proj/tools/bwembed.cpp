// bwembed: generators, checkers and the embedding pipeline from the command line.
//
// Every subcommand prints one JSON document (to --json-out when given).
// Exit status: 0 success, 2 certified negative verdict, 1 anything else.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bwembed/conditions.hpp"
#include "bwembed/config.hpp"
#include "bwembed/embedder.hpp"
#include "bwembed/homomorphism.hpp"
#include "bwembed/hostgen.hpp"
#include "bwembed/io.hpp"
#include "bwembed/partition_engine.hpp"
#include "bwembed/pipeline.hpp"
#include "bwembed/regularity.hpp"
#include "bwembed/shifted_walks.hpp"

namespace {

using namespace bwembed;

constexpr int kOk = 0;
constexpr int kCertified = 2;
constexpr int kFailure = 1;

struct Globals {
  std::uint64_t seed = 1;
  std::string config_path;
  std::string json_out;

  Config config() const { return config_path.empty() ? Config{} : Config::load(config_path); }
};

void emit(const Globals& g, const Json& j) {
  if (g.json_out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(g.json_out, j);
  }
}

Chord parse_chord(const std::string& text) {
  std::stringstream in(text);
  Chord c;
  char comma = 0;
  if (!(in >> c.first >> comma >> c.second) || comma != ',' || !in.eof())
    fail(ErrorKind::invalid_input, "chord must look like 'i,j', got '" + text + "'");
  return c;
}

CheckMode mode_or(const std::string& text, CheckMode fallback) { return text.empty() ? fallback : parse_check_mode(text); }

// The partition lives either in its own file or inside the host bundle.
ClusterPartition load_partition(const std::string& partition_path, const Json& host) {
  if (!partition_path.empty()) return partition_from_json(read_json_file(partition_path));
  if (!host.contains("partition")) fail(ErrorKind::invalid_input, "no --partition given and the host carries none");
  return partition_from_json(host);
}

// ---------------------------------------------------------------------------

struct GenHost {
  std::string kind = "super-regular";
  int k = 4, s = 50, n = 16, m = 4;
  double d = 0.5, p = 0.5;
};

int run_gen_host(const Globals& g, const GenHost& o) {
  if (o.kind == "super-regular") {
    emit(g, host_to_json(gen_super_regular_host(o.k, o.s, o.d, g.seed)));
  } else if (o.kind == "cycle-blowup") {
    emit(g, host_to_json(gen_cycle_blowup(o.k, o.s)));
  } else if (o.kind == "extremal") {
    emit(g, graph_to_json(gen_extremal_counterexample(o.n, o.m)));
  } else if (o.kind == "random") {
    emit(g, graph_to_json(gen_random_graph(o.n, o.p, g.seed)));
  } else {
    fail(ErrorKind::invalid_input, "unknown host kind '" + o.kind + "'");
  }
  return kOk;
}

struct GenH {
  std::string kind = "bandwidth";
  int n = 400, max_degree = 3, b = 10;
  double p = 0.5;
};

int run_gen_h(const Globals& g, const GenH& o) {
  if (o.kind == "bandwidth") {
    emit(g, h_bundle_to_json(gen_bandwidth_bipartite_h(o.n, o.max_degree, o.b, g.seed, o.p)));
  } else if (o.kind == "matching") {
    emit(g, h_bundle_to_json(gen_matching_h(o.n)));
  } else if (o.kind == "path") {
    emit(g, h_bundle_to_json(gen_path_h(o.n)));
  } else {
    fail(ErrorKind::invalid_input, "unknown H kind '" + o.kind + "'");
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CheckExpander {
  std::string graph, mode;
  double nu = 0.05, tau = 0.2;
  std::int64_t trials = 2000;
  int exact_cap = 20;
};

int run_check_expander(const Globals& g, const CheckExpander& o) {
  Graph gr = graph_from_json(read_json_file(o.graph));
  ExpanderOptions eo;
  eo.exact_cap = o.exact_cap;
  eo.mode = mode_or(o.mode, gr.n() <= o.exact_cap ? CheckMode::exact : CheckMode::sampled);
  eo.trials = o.trials;
  eo.seed = g.seed;
  auto v = check_robust_expander(gr, o.nu, o.tau, eo);
  emit(g, to_json(v));
  return v.holds ? kOk : kCertified;
}

struct CheckDegseq {
  std::string graph;
  double gamma = 0.1;
};

int run_check_degseq(const Globals& g, const CheckDegseq& o) {
  Graph gr = graph_from_json(read_json_file(o.graph));
  auto d = degree_sequence(gr);
  auto v = check_degree_sequence_condition(d, o.gamma);
  Json j{{"holds", v.holds}, {"mode", "exact"}, {"params", {{"gamma", o.gamma}, {"n", gr.n()}}}, {"degrees", d}};
  if (!v.holds) j["witness"] = {{"index", v.failing_index}};
  emit(g, j);
  return v.holds ? kOk : kCertified;
}

int run_check_ore(const Globals& g, const CheckDegseq& o) {
  Graph gr = graph_from_json(read_json_file(o.graph));
  auto v = check_ore_condition(gr, o.gamma);
  Json j{{"holds", v.holds}, {"mode", "exact"}, {"params", {{"gamma", o.gamma}, {"n", gr.n()}}}};
  if (v.witness) j["witness"] = {v.witness->first, v.witness->second};
  emit(g, j);
  return v.holds ? kOk : kCertified;
}

// ---------------------------------------------------------------------------

struct PairArgs {
  std::string graph, partition, mode;
  int i = 0, j = 1;
  double eps = 0.35, d = 0.3;
  bool super = false;
  int exact_cap = 14;
};

PairCheckOptions pair_options(const Globals& g, const PairArgs& o) {
  PairCheckOptions po;
  if (!o.mode.empty()) po.mode = parse_check_mode(o.mode);
  po.exact_cap = o.exact_cap;
  po.seed = g.seed;
  return po;
}

int run_check_pair(const Globals& g, const PairArgs& o) {
  Json host = read_json_file(o.graph);
  Graph gr = graph_from_json(host);
  auto p = load_partition(o.partition, host);
  p.validate(gr.n());
  if (o.i < 0 || o.j < 0 || o.i >= p.class_count() || o.j >= p.class_count() || o.i == o.j)
    fail(ErrorKind::invalid_input, "class indices out of range");
  const auto& a = p.classes[static_cast<std::size_t>(o.i)];
  const auto& b = p.classes[static_cast<std::size_t>(o.j)];
  auto po = pair_options(g, o);
  if (o.super) {
    auto v = check_super_regular_pair(gr, a, b, o.eps, o.d, po);
    emit(g, to_json(v));
    return v.super_regular ? kOk : kCertified;
  }
  auto v = check_regular_pair(gr, a, b, o.eps, o.d, po);
  emit(g, to_json(v));
  return v.regular ? kOk : kCertified;
}

int run_build_reduced(const Globals& g, const PairArgs& o) {
  Json host = read_json_file(o.graph);
  Graph gr = graph_from_json(host);
  auto p = load_partition(o.partition, host);
  p.validate(gr.n());
  auto red = build_reduced_graph(gr, p.classes, o.eps, o.d, pair_options(g, o));
  Json j = graph_to_json(red.r);
  j["eps"] = red.eps;
  j["d"] = red.d;
  j["heuristic"] = red.heuristic;
  emit(g, j);
  return kOk;
}

// ---------------------------------------------------------------------------

struct FindWalk {
  std::string graph, matching;
  int start = 0;
  double nu = 0.2;
};

int run_find_walk(const Globals& g, const FindWalk& o) {
  Graph gr = graph_from_json(read_json_file(o.graph));
  Matching m = matching_from_json(gr, read_json_file(o.matching));
  if (o.start < 0 || o.start >= gr.n()) fail(ErrorKind::invalid_input, "start vertex out of range");
  auto res = find_closed_shifted_walk(gr, m, o.start, o.nu);
  Json j{{"found", res.walk.has_value()}, {"bound", res.bound}};
  if (res.walk) {
    validate_shifted_walk(gr, m, *res.walk);
    j["walk"] = *res.walk;
    j["length"] = res.length;
  }
  emit(g, j);
  return res.walk ? kOk : kCertified;
}

// ---------------------------------------------------------------------------

struct LemmaG {
  std::string host, partition, demand;
};

int run_lemma_g(const Globals& g, const LemmaG& o) {
  const Config cfg = g.config();
  cfg.validate();
  Json host = read_json_file(o.host);
  Graph gr = graph_from_json(host);
  auto p = load_partition(o.partition, host);
  auto base = lemma_for_g_baseline(gr, p, cfg, mix_seed(g.seed, 1));
  Json j{{"sizes", base.sizes}, {"cycle", base.cycle.order}, {"partition", partition_to_json(base.partition)},
         {"reduced_heuristic", base.reduced.heuristic}, {"balance_steps", base.balance.steps.size()},
         {"exceptional_placed", base.exceptional.placements.size()}};
  if (o.demand.empty()) {
    emit(g, j);
    return kOk;
  }
  auto demand = int_array_from_json(read_json_file(o.demand), "sizes");
  auto fin = lemma_for_g_finish(gr, base, demand, cfg, mix_seed(g.seed, 3));
  j["finish"] = to_json(fin);
  j["final_partition"] = partition_to_json(fin.final_partition);
  emit(g, j);
  return fin.alpha.all() ? kOk : kCertified;
}

// ---------------------------------------------------------------------------

struct BuildHom {
  std::string h, ordering, sizes, chord;
  bool coin_logs = false;
};

HBundle load_h(const std::string& h_path, const std::string& ordering_path) {
  Json hj = read_json_file(h_path);
  if (!ordering_path.empty()) hj["ordering"] = ordering_from_json(read_json_file(ordering_path)).labels;
  return h_bundle_from_json(hj);
}

LemmaHParams params_of(const Config& cfg) { return LemmaHParams{cfg.k1, cfg.m1, cfg.m2, cfg.k2}; }

int run_build_hom(const Globals& g, const BuildHom& o) {
  const Config cfg = g.config();
  cfg.validate();
  HBundle hb = load_h(o.h, o.ordering);
  auto sizes = int_array_from_json(read_json_file(o.sizes), "sizes");
  auto hom = build_homomorphism(hb.h, hb.ordering, hb.side, sizes, parse_chord(o.chord), cfg, g.seed, params_of(cfg));
  emit(g, to_json(hom, o.coin_logs));
  return kOk;
}

struct Balance {
  std::string h, ordering, sizes, chord;
  int runs = 1000;
};

// Repeated homomorphism builds with derived seeds; every certificate is
// re-checked independently.
int run_montecarlo_balance(const Globals& g, const Balance& o) {
  Config cfg = g.config();
  cfg.validate();
  HBundle hb = load_h(o.h, o.ordering);
  auto sizes = int_array_from_json(read_json_file(o.sizes), "sizes");
  const Chord chord = parse_chord(o.chord);
  int first_try = 0, recheck_failures = 0, exhausted = 0, max_attempts = 0;
  std::vector<int> attempts_histogram(static_cast<std::size_t>(cfg.max_retries) + 1, 0);
  for (int r = 0; r < o.runs; ++r) {
    try {
      auto hom = build_homomorphism(hb.h, hb.ordering, hb.side, sizes, chord, cfg, mix_seed(g.seed, static_cast<std::uint64_t>(r)),
                                    params_of(cfg));
      first_try += hom.first_try_balance;
      max_attempts = std::max(max_attempts, hom.attempts);
      ++attempts_histogram[static_cast<std::size_t>(std::min(hom.attempts, cfg.max_retries))];
      auto cert = check_hom_certificate(hb.h, hom.f, hom.s, sizes, chord, cfg.xi);
      recheck_failures += !cert.all();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::retry_exhausted) throw;
      ++exhausted;
    }
  }
  Json j{{"runs", o.runs},
         {"first_try_balance", first_try},
         {"first_try_fraction", o.runs > 0 ? static_cast<double>(first_try) / o.runs : 0.0},
         {"max_attempts", max_attempts},
         {"retry_exhausted", exhausted},
         {"recheck_failures", recheck_failures},
         {"attempts_histogram", attempts_histogram}};
  emit(g, j);
  return recheck_failures == 0 && exhausted == 0 ? kOk : kCertified;
}

// ---------------------------------------------------------------------------

struct Embed {
  std::string host, partition, h, ordering, hom;
};

// The partition must already have the sizes |f^-1(i)| (for example the final
// partition printed by `lemma-g --demand`).
int run_embed(const Globals& g, const Embed& o) {
  const Config cfg = g.config();
  cfg.validate();
  Json host = read_json_file(o.host);
  Graph gr = graph_from_json(host);
  auto p = load_partition(o.partition, host);
  p.validate(gr.n());
  HBundle hb = load_h(o.h, o.ordering);
  auto f = int_array_from_json(read_json_file(o.hom), "f");
  if (static_cast<int>(f.size()) != hb.h.n()) fail(ErrorKind::invalid_input, "f has the wrong length");
  for (int c : f)
    if (c < 0 || c >= p.class_count()) fail(ErrorKind::invalid_input, "f names a class outside the partition");
  auto w = classes_from_map(f, p.class_count());

  PairCheckOptions po;
  po.exact_cap = cfg.pair_exact_cap;
  po.random_seeds = cfg.pair_random_seeds;
  po.seed = mix_seed(g.seed, 17);
  auto reduced = build_reduced_graph(gr, p.classes, cfg.eps, cfg.d, po);
  Graph r_prime = matching_pairs_graph(p.class_count());
  for (auto [u, v] : r_prime.edges())
    if (!reduced.r.has_edge(u, v))
      fail(ErrorKind::validation, "matched classes " + std::to_string(u) + "," + std::to_string(v) + " are not adjacent in R");
  auto compat = check_compatibility(hb.h, w, p.sizes(), reduced.r, r_prime, cfg.eps);
  Json j{{"compatibility", to_json(compat)}};
  if (!compat.all()) {
    emit(g, j);
    return kCertified;
  }
  VertexSet constrained;
  for (const auto& s : compat.s_sets) constrained.insert(constrained.end(), s.begin(), s.end());
  for (const auto& t : compat.t_sets) constrained.insert(constrained.end(), t.begin(), t.end());
  constrained = normalize_set(std::move(constrained), gr.n());
  EmbedOptions eo;
  eo.budget_factor = cfg.embed_budget_factor;
  eo.seed = g.seed;
  Graph g_prime = pure_subgraph(gr, p, reduced.r);
  auto emb = embed_blowup(hb.h, w, g_prime, p.classes, r_prime, constrained, eo);
  auto verdict = verify_embedding(hb.h, gr, emb.phi);
  j["phi"] = emb.phi;
  j["verification"] = to_json(verdict);
  j["restarts"] = emb.restarts;
  j["placements"] = emb.placements;
  emit(g, j);
  return verdict.holds ? kOk : kFailure;
}

struct Pipeline {
  std::string host, partition, h, ordering;
  bool coin_logs = false;
  bool skip_host_checks = false;
};

int run_pipeline(const Globals& g, const Pipeline& o) {
  const Config cfg = g.config();
  Json host = read_json_file(o.host);
  Graph gr = graph_from_json(host);
  auto p = load_partition(o.partition, host);
  HBundle hb = load_h(o.h, o.ordering);
  PipelineOptions po;
  po.coin_logs = o.coin_logs;
  po.check_host = !o.skip_host_checks;
  auto rep = run_full_pipeline(gr, p, hb, cfg, g.seed, po);
  emit(g, rep.json);
  if (rep.success) return kOk;
  std::cerr << "pipeline failed at " << rep.failed_stage << ": " << rep.message << "\n";
  return rep.certified_failure ? kCertified : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bandwidth embedding toolkit: generators, certificates and the full pipeline"};
  app.set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals globals;
  app.add_option("--seed", globals.seed, "Root seed")->capture_default_str();
  app.add_option("--config", globals.config_path, "Config file (key = value lines)")->check(CLI::ExistingFile);
  app.add_option("--json-out", globals.json_out, "Write the JSON result here instead of stdout");

  std::function<int()> action;

  GenHost gen_host;
  auto* c = app.add_subcommand("gen-host", "Generate a host graph");
  c->add_option("--kind", gen_host.kind, "super-regular | cycle-blowup | extremal | random")->capture_default_str();
  c->add_option("--k", gen_host.k, "Matched pairs (super-regular) or cycle length (cycle-blowup)")->capture_default_str();
  c->add_option("--s", gen_host.s, "Class size")->capture_default_str();
  c->add_option("--d", gen_host.d, "Pair density")->capture_default_str();
  c->add_option("--n", gen_host.n, "Order (extremal, random)")->capture_default_str();
  c->add_option("--m", gen_host.m, "Size of the first class (extremal)")->capture_default_str();
  c->add_option("--p", gen_host.p, "Edge probability (random)")->capture_default_str();
  c->callback([&] { action = [&] { return run_gen_host(globals, gen_host); }; });

  GenH gen_h;
  c = app.add_subcommand("gen-h", "Generate a bipartite graph H with a bandwidth ordering");
  c->add_option("--kind", gen_h.kind, "bandwidth | matching | path")->capture_default_str();
  c->add_option("--n", gen_h.n, "Order")->capture_default_str();
  c->add_option("--max-degree", gen_h.max_degree, "Degree cap")->capture_default_str();
  c->add_option("--b", gen_h.b, "Bandwidth bound")->capture_default_str();
  c->add_option("--p", gen_h.p, "Probability of keeping a candidate edge")->capture_default_str();
  c->callback([&] { action = [&] { return run_gen_h(globals, gen_h); }; });

  CheckExpander expander;
  c = app.add_subcommand("check-expander", "Robust (nu,tau)-expansion");
  c->add_option("--graph", expander.graph)->required()->check(CLI::ExistingFile);
  c->add_option("--nu", expander.nu)->capture_default_str();
  c->add_option("--tau", expander.tau)->capture_default_str();
  c->add_option("--mode", expander.mode, "exact | sampled (default: exact when n fits the cap)");
  c->add_option("--trials", expander.trials, "Sampled sets")->capture_default_str();
  c->add_option("--exact-cap", expander.exact_cap)->capture_default_str();
  c->callback([&] { action = [&] { return run_check_expander(globals, expander); }; });

  CheckDegseq degseq;
  c = app.add_subcommand("check-degseq", "Degree-sequence condition");
  c->add_option("--graph", degseq.graph)->required()->check(CLI::ExistingFile);
  c->add_option("--gamma", degseq.gamma)->capture_default_str();
  c->callback([&] { action = [&] { return run_check_degseq(globals, degseq); }; });

  CheckDegseq ore;
  c = app.add_subcommand("check-ore", "Ore-type condition");
  c->add_option("--graph", ore.graph)->required()->check(CLI::ExistingFile);
  c->add_option("--gamma", ore.gamma)->capture_default_str();
  c->callback([&] { action = [&] { return run_check_ore(globals, ore); }; });

  PairArgs pair;
  auto add_pair_flags = [&](CLI::App* sub) {
    sub->add_option("--graph", pair.graph, "Graph JSON (may also carry the partition)")->required()->check(CLI::ExistingFile);
    sub->add_option("--partition", pair.partition)->check(CLI::ExistingFile);
    sub->add_option("--eps", pair.eps)->capture_default_str();
    sub->add_option("--d", pair.d)->capture_default_str();
    sub->add_option("--mode", pair.mode, "exact | heuristic (default: exact when both sides fit the cap)");
    sub->add_option("--exact-cap", pair.exact_cap)->capture_default_str();
  };
  c = app.add_subcommand("check-pair", "(eps,d)-regularity of two classes");
  add_pair_flags(c);
  c->add_option("--i", pair.i, "First class index")->capture_default_str();
  c->add_option("--j", pair.j, "Second class index")->capture_default_str();
  c->add_flag("--super", pair.super, "Also require super-regular minimum degrees");
  c->callback([&] { action = [&] { return run_check_pair(globals, pair); }; });
  c = app.add_subcommand("build-reduced", "Reduced graph of a partition");
  add_pair_flags(c);
  c->callback([&] { action = [&] { return run_build_reduced(globals, pair); }; });

  FindWalk walk;
  c = app.add_subcommand("find-walk", "Closed shifted walk through a start vertex");
  c->add_option("--graph", walk.graph)->required()->check(CLI::ExistingFile);
  c->add_option("--matching", walk.matching)->required()->check(CLI::ExistingFile);
  c->add_option("--start", walk.start)->capture_default_str();
  c->add_option("--nu", walk.nu)->capture_default_str();
  c->callback([&] { action = [&] { return run_find_walk(globals, walk); }; });

  LemmaG lemma_g;
  c = app.add_subcommand("lemma-g", "Host partition: cycle, exceptional vertices, balancing, optional resizing");
  c->add_option("--host", lemma_g.host)->required()->check(CLI::ExistingFile);
  c->add_option("--partition", lemma_g.partition)->check(CLI::ExistingFile);
  c->add_option("--demand", lemma_g.demand, "Demanded class sizes (array or {\"sizes\": [...]})")->check(CLI::ExistingFile);
  c->callback([&] { action = [&] { return run_lemma_g(globals, lemma_g); }; });

  BuildHom hom;
  c = app.add_subcommand("build-hom", "Homomorphism of H onto the cluster cycle");
  c->add_option("--h", hom.h)->required()->check(CLI::ExistingFile);
  c->add_option("--ordering", hom.ordering, "Ordering JSON when H carries none")->check(CLI::ExistingFile);
  c->add_option("--sizes", hom.sizes, "Class sizes (n_i)")->required()->check(CLI::ExistingFile);
  c->add_option("--chord", hom.chord, "B-chord as pair indices 'i,j'")->required();
  c->add_flag("--coin-logs", hom.coin_logs, "Include coin flips and f2, f1");
  c->callback([&] { action = [&] { return run_build_hom(globals, hom); }; });

  Balance balance;
  c = app.add_subcommand("montecarlo-balance", "First-try balance frequency of the homomorphism builder");
  c->add_option("--h", balance.h)->required()->check(CLI::ExistingFile);
  c->add_option("--ordering", balance.ordering)->check(CLI::ExistingFile);
  c->add_option("--sizes", balance.sizes)->required()->check(CLI::ExistingFile);
  c->add_option("--chord", balance.chord)->required();
  c->add_option("--runs", balance.runs)->capture_default_str();
  c->callback([&] { action = [&] { return run_montecarlo_balance(globals, balance); }; });

  Embed embed;
  c = app.add_subcommand("embed", "Compatibility check, embedding and verification");
  c->add_option("--host", embed.host)->required()->check(CLI::ExistingFile);
  c->add_option("--partition", embed.partition, "Partition with sizes |f^-1(i)|")->check(CLI::ExistingFile);
  c->add_option("--h", embed.h)->required()->check(CLI::ExistingFile);
  c->add_option("--ordering", embed.ordering)->check(CLI::ExistingFile);
  c->add_option("--hom", embed.hom, "Homomorphism JSON with \"f\"")->required()->check(CLI::ExistingFile);
  c->callback([&] { action = [&] { return run_embed(globals, embed); }; });

  Pipeline pipeline;
  c = app.add_subcommand("pipeline", "All stages from host and H to a verified embedding");
  c->add_option("--host", pipeline.host)->required()->check(CLI::ExistingFile);
  c->add_option("--partition", pipeline.partition)->check(CLI::ExistingFile);
  c->add_option("--h", pipeline.h)->required()->check(CLI::ExistingFile);
  c->add_option("--ordering", pipeline.ordering)->check(CLI::ExistingFile);
  c->add_flag("--coin-logs", pipeline.coin_logs);
  c->add_flag("--skip-host-checks", pipeline.skip_host_checks, "Skip the minimum degree and expansion checks");
  c->callback([&] { action = [&] { return run_pipeline(globals, pipeline); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailure;
  }
  try {
    return action ? action() : kFailure;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return e.certified() ? kCertified : kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

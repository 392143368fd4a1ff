#include "bwembed/io.hpp"

#include <fstream>
#include <sstream>

namespace bwembed {

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    fail(ErrorKind::invalid_input, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::invalid_input, "cannot write " + path);
  out << j.dump(2) << '\n';
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::invalid_input, std::string("missing key '") + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(ErrorKind::invalid_input, what + " must be an integer");
  return j.get<int>();
}

std::vector<int> as_ints(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(ErrorKind::invalid_input, what + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Edge> as_edges(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(ErrorKind::invalid_input, what + " must be an array of pairs");
  std::vector<Edge> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (!e.is_array() || e.size() != 2) fail(ErrorKind::invalid_input, what + "[" + std::to_string(i) + "] is not a pair");
    out.emplace_back(as_int(e[0], what), as_int(e[1], what));
  }
  return out;
}

Json chord_json(const std::optional<Chord>& c) {
  if (!c) return nullptr;
  return Json::array({c->first, c->second});
}

std::optional<Chord> chord_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  auto v = as_ints(j.at(key), key);
  if (v.size() != 2) fail(ErrorKind::invalid_input, std::string(key) + " must have two entries");
  return Chord{v[0], v[1]};
}

Json sets_json(const std::vector<VertexSet>& s) {
  Json a = Json::array();
  for (const auto& x : s) a.push_back(x);
  return a;
}

}  // namespace

Graph graph_from_json(const Json& j) {
  int n = as_int(field(j, "n"), "n");
  if (n < 0) fail(ErrorKind::invalid_input, "n must be non-negative");
  return Graph(n, as_edges(field(j, "edges"), "edges"));
}

Json graph_to_json(const Graph& g) {
  Json e = Json::array();
  for (auto [u, v] : g.edges()) e.push_back({u, v});
  return Json{{"n", g.n()}, {"edges", e}};
}

ClusterPartition partition_from_json(const Json& in) {
  const Json& j = in.is_object() && in.contains("partition") ? in.at("partition") : in;
  ClusterPartition p;
  const auto& cls = field(j, "classes");
  if (!cls.is_array()) fail(ErrorKind::invalid_input, "classes must be an array of arrays");
  for (std::size_t i = 0; i < cls.size(); ++i) {
    auto c = as_ints(cls[i], "classes[" + std::to_string(i) + "]");
    std::sort(c.begin(), c.end());
    p.classes.push_back(std::move(c));
  }
  if (j.contains("exceptional")) {
    p.exceptional = as_ints(j.at("exceptional"), "exceptional");
    std::sort(p.exceptional.begin(), p.exceptional.end());
  }
  p.a_chord = chord_from(j, "a_chord");
  p.b_chord = chord_from(j, "b_chord");
  return p;
}

Json partition_to_json(const ClusterPartition& p) {
  return Json{{"classes", sets_json(p.classes)},
              {"exceptional", p.exceptional},
              {"a_chord", chord_json(p.a_chord)},
              {"b_chord", chord_json(p.b_chord)}};
}

Matching matching_from_json(const Graph& g, const Json& j) { return Matching(g, as_edges(field(j, "pairs"), "pairs")); }

Json matching_to_json(const Matching& m) {
  Json e = Json::array();
  for (auto [u, v] : m.pairs()) e.push_back({u, v});
  return Json{{"pairs", e}};
}

BandwidthOrdering ordering_from_json(const Json& in) {
  const Json& j = in.is_object() && in.contains("ordering") ? in.at("ordering") : in;
  BandwidthOrdering ord;
  ord.labels = as_ints(field(j, "labels"), "labels");
  if (j.contains("bandwidth")) ord.claimed_bound = as_int(j.at("bandwidth"), "bandwidth");
  return ord;
}

Json ordering_to_json(const BandwidthOrdering& ord) { return Json{{"labels", ord.labels}, {"bandwidth", ord.claimed_bound}}; }

std::vector<int> int_array_from_json(const Json& j, const std::string& key) {
  if (j.is_array()) return as_ints(j, key);
  return as_ints(field(j, key.c_str()), key);
}

HBundle h_bundle_from_json(const Json& j) {
  HBundle b;
  b.h = graph_from_json(j);
  b.ordering = ordering_from_json(j);
  if (j.contains("side")) {
    b.side = as_ints(j.at("side"), "side");
  } else {
    b.side = bipartition(b.h);
    if (b.side.empty() && b.h.n() > 0) fail(ErrorKind::invalid_input, "H is not bipartite");
  }
  return b;
}

Json h_bundle_to_json(const BandwidthH& b) {
  Json j = graph_to_json(b.h);
  j["ordering"] = ordering_to_json(b.ordering);
  j["side"] = b.side;
  return j;
}

Json host_to_json(const HostInstance& host) {
  Json j = graph_to_json(host.g);
  j["partition"] = partition_to_json(host.partition);
  return j;
}

Json to_json(const ExpanderVerdict& v) {
  Json j{{"holds", v.holds},
         {"mode", to_string(v.mode)},
         {"params", {{"nu", v.nu.value()}, {"tau", v.tau.value()}, {"min_size", v.min_size}, {"max_size", v.max_size}}},
         {"sets_checked", v.sets_checked}};
  if (v.witness) {
    j["witness"] = *v.witness;
    j["witness_rn_size"] = v.witness_rn_size;
  }
  return j;
}

Json to_json(const RegularityVerdict& v) {
  Json j{{"regular", v.regular},
         {"below_density", v.below_density},
         {"density", v.density.value()},
         {"mode", to_string(v.mode)},
         {"max_deviation_seen", v.max_deviation_seen}};
  if (v.witness) {
    j["witness"] = {{"x", v.witness->first}, {"y", v.witness->second}, {"deviation", v.witness_deviation}};
  }
  return j;
}

Json to_json(const SuperRegularVerdict& v) {
  return Json{{"super_regular", v.super_regular},
              {"regularity", to_json(v.regularity)},
              {"min_degree_a", v.min_degree_a},
              {"min_degree_b", v.min_degree_b},
              {"low_degree_a", v.low_degree_a},
              {"low_degree_b", v.low_degree_b}};
}

Json to_json(const VertexMove& m) {
  return Json{{"vertex", m.vertex},
              {"from", m.from_class},
              {"to", m.to_class},
              {"reference", m.reference_class},
              {"degree", m.witness_degree},
              {"threshold", m.threshold}};
}

Json to_json(const AlphaReport& a) {
  return Json{{"alpha1", a.alpha1}, {"alpha2", a.alpha2}, {"alpha3", a.alpha3}, {"alpha4", a.alpha4},
              {"alpha5", a.alpha5}, {"heuristic", a.heuristic}, {"failures", a.failures}};
}

Json to_json(const MobilityResult& m) {
  Json moves = Json::array(), hyp = Json::array();
  for (const auto& x : m.moves) moves.push_back(to_json(x));
  for (const auto& h : m.hypotheses) hyp.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  return Json{{"hypotheses", hyp},
              {"moves", moves},
              {"churn", m.churn},
              {"churn_bound", m.churn_bound},
              {"used_b_chord", m.used_b_chord}};
}

Json to_json(const LemmaGResult& r) {
  const auto& b = r.baseline;
  Json bal = Json::array();
  for (const auto& s : b.balance.steps) {
    Json moves = Json::array();
    for (const auto& m : s.moves) moves.push_back(to_json(m));
    bal.push_back({{"walk", s.walk},
                   {"moved_per_edge", s.moved_per_edge},
                   {"sigma_before", s.sigma_before},
                   {"sigma_after", s.sigma_after},
                   {"retired_pairs", s.retired_pairs},
                   {"moves", moves}});
  }
  Json exc = Json::array();
  for (const auto& p : b.exceptional.placements)
    exc.push_back({{"vertex", p.vertex}, {"neighbour_class", p.neighbour_class}, {"target", p.target_class}, {"neighbours", p.neighbours}});
  return Json{{"cycle",
               {{"order", b.cycle.order},
                {"a_chord", chord_json(b.cycle.a_chord)},
                {"b_chord", chord_json(b.cycle.b_chord)},
                {"nodes_explored", b.cycle.nodes_explored}}},
              {"reduced_heuristic", b.reduced.heuristic},
              {"exceptional", exc},
              {"balance",
               {{"sigma_initial", b.balance.sigma_initial},
                {"per_edge", b.balance.per_edge},
                {"step_limit", b.balance.step_limit},
                {"active_floor", b.balance.active_floor},
                {"steps", bal}}},
              {"sizes", b.sizes},
              {"mobility", to_json(r.mobility)},
              {"alpha", to_json(r.alpha)},
              {"final_partition", partition_to_json(r.final_partition)}};
}

Json to_json(const BetaCertificate& c) {
  return Json{{"homomorphism", c.homomorphism}, {"beta1", c.beta1}, {"beta2", c.beta2},
              {"beta3", c.beta3},               {"tally", c.tally},  {"failure", c.failure}};
}

Json to_json(const Homomorphism& hom, bool coin_logs) {
  Json j{{"f", hom.f},
         {"S", hom.s},
         {"certificate", to_json(hom.certificate)},
         {"attempts", hom.attempts},
         {"first_try_balance", hom.first_try_balance},
         {"k_prime", hom.k_prime},
         {"chord", {hom.chord.first, hom.chord.second}},
         {"chord_prime", {hom.chord_prime.first, hom.chord_prime.second}},
         {"params", {{"k1", hom.params.k1}, {"m1", hom.params.m1}, {"m2", hom.params.m2}, {"k2", hom.params.k2}, {"m3", hom.m3}}},
         {"beta_n", hom.beta_n},
         {"swapped", hom.swapped},
         {"segment_repairs", hom.segments.repaired}};
  if (coin_logs) {
    Json log = Json::array();
    for (const auto& a : hom.log) {
      Json coins = Json::array();
      for (const auto& c : a.coins) {
        std::string s;
        for (char x : c) s.push_back(x ? '1' : '0');
        coins.push_back(s);
      }
      log.push_back({{"i0", a.i0}, {"i0b", a.i0b}, {"coins", coins}, {"balance", a.balance},
                     {"beta1", a.beta1}, {"beta2", a.beta2}, {"tally", a.tally}});
    }
    j["log"] = log;
    j["f2"] = hom.f2;
    j["f1"] = hom.f1;
  }
  return j;
}

Json to_json(const CompatibilityReport& c) {
  Json s = Json::array(), t = Json::array();
  for (const auto& x : c.s_sets) s.push_back(x.size());
  for (const auto& x : c.t_sets) t.push_back(x.size());
  Json j{{"gamma1", c.gamma1}, {"gamma2", c.gamma2},   {"gamma3", c.gamma3},   {"S_sizes", s},
         {"T_sizes", t},       {"S_bound", c.s_bound}, {"T_bound", c.t_bound}, {"gamma1_failures", c.gamma1_failures},
         {"gamma3_failures", c.gamma3_failures}};
  if (c.gamma2_failure) j["gamma2_failure"] = {c.gamma2_failure->first, c.gamma2_failure->second};
  if (c.gamma2_edge) j["gamma2_edge"] = {c.gamma2_edge->first, c.gamma2_edge->second};
  return j;
}

Json to_json(const EmbeddingVerdict& v) {
  return Json{{"holds", v.holds}, {"injective", v.injective}, {"edges", v.edges}, {"failure", v.failure}};
}

}  // namespace bwembed

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>

#include <sys/wait.h>

#include "bwembed/config.hpp"
#include "bwembed/hostgen.hpp"
#include "bwembed/io.hpp"
#include "bwembed/pipeline.hpp"

using namespace bwembed;
namespace fs = std::filesystem;

namespace {

HBundle bundle(const BandwidthH& b) { return HBundle{b.h, b.ordering, b.side}; }

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / ("bwembed_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

}  // namespace

TEST(ConfigParse, KeysCommentsAndSections) {
  Config c = Config::parse("# schedule\n[homomorphism]\nm1 = 20\nk2=3\nxi = 0.5 # slack\n\nlambda = \"0.01\"\n");
  EXPECT_EQ(c.m1, 20);
  EXPECT_EQ(c.k2, 3);
  EXPECT_DOUBLE_EQ(c.xi, 0.5);
  EXPECT_DOUBLE_EQ(c.lambda, 0.01);
  EXPECT_DOUBLE_EQ(c.eps, Config{}.eps);
  auto m = c.to_map();
  EXPECT_EQ(Config::parse("m1 = " + m.at("m1")).m1, 20);
}

TEST(ConfigParse, ErrorsNameTheLine) {
  try {
    Config::parse("m1 = 4\nbogus = 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(Config::parse("m1 4\n"), Error);
  EXPECT_THROW(Config::parse("m1 = four\n"), Error);
  EXPECT_THROW(Config::load("/nonexistent/bwembed.cfg"), Error);
}

TEST(ConfigValidate, OrderedRelations) {
  auto kind_of = [](const std::string& text) {
    try {
      Config::parse(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::internal;
  };
  EXPECT_EQ(kind_of("lambda = 0.95\n"), ErrorKind::parameter);          // lambda > xi
  EXPECT_EQ(kind_of("eps_prime = 0.7\n"), ErrorKind::parameter);        // eps' > eps
  EXPECT_EQ(kind_of("eps = 1\neps_prime = 0.3\n"), ErrorKind::parameter);
  EXPECT_EQ(kind_of("d = 0.5\n"), ErrorKind::parameter);                // d > d'
  EXPECT_EQ(kind_of("tau = 0.09\n"), ErrorKind::parameter);             // tau = eta
  EXPECT_EQ(kind_of("nu = 0.1\n"), ErrorKind::parameter);               // nu > tau
  EXPECT_NO_THROW(Config{}.validate());
}

TEST(JsonIo, ParseErrorCarriesLocation) {
  try {
    parse_json_text("{\n  \"n\": 3,\n  \"edges\": [[0, 1],,]\n}", "g.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
    EXPECT_NE(std::string(e.what()).find("g.json:3:"), std::string::npos) << e.what();
  }
}

TEST(JsonIo, GraphPartitionAndOrderingRoundTrip) {
  HostInstance host = gen_super_regular_host(2, 6, 0.5, 3);
  Json j = host_to_json(host);
  Graph g = graph_from_json(j);
  EXPECT_EQ(g.edges(), host.g.edges());
  ClusterPartition p = partition_from_json(j);
  EXPECT_EQ(p.classes, host.partition.classes);
  EXPECT_EQ(p.b_chord, host.partition.b_chord);

  BandwidthH b = gen_bandwidth_bipartite_h(30, 3, 4, 5);
  HBundle back = h_bundle_from_json(h_bundle_to_json(b));
  EXPECT_EQ(back.h.edges(), b.h.edges());
  EXPECT_EQ(back.ordering.labels, b.ordering.labels);
  EXPECT_EQ(back.side, b.side);

  EXPECT_THROW(graph_from_json(parse_json_text(R"({"n": 2, "edges": [[0, 2]]})")), Error);
  EXPECT_THROW(graph_from_json(parse_json_text(R"({"edges": []})")), Error);
  EXPECT_EQ(int_array_from_json(parse_json_text(R"({"sizes": [3, 4]})"), "sizes"), (std::vector<int>{3, 4}));
}

TEST(Pipeline, SucceedsOnAcceptanceInstance) {
  HostInstance host = gen_super_regular_host(4, 50, 0.5, 1001);
  BandwidthH h = gen_bandwidth_bipartite_h(400, 3, 10, 2001);
  auto rep = run_full_pipeline(host.g, host.partition, bundle(h), Config{}, 1);
  ASSERT_TRUE(rep.success) << rep.failed_stage << ": " << rep.message;
  EXPECT_EQ(rep.phi.size(), 400u);
  EXPECT_TRUE(rep.json["success"].get<bool>());
  const auto& stages = rep.json["stages"];
  std::vector<std::string> names;
  for (const auto& s : stages) {
    names.push_back(s["name"].get<std::string>());
    EXPECT_TRUE(s["ok"].get<bool>());
  }
  EXPECT_EQ(names, (std::vector<std::string>{"input", "host-checks", "lemma-g-baseline", "homomorphism", "lemma-g-finish",
                                             "compatibility", "embedding", "verify"}));
  EXPECT_EQ(rep.json["seeds"]["root"].get<int>(), 1);
  // Independent re-check of phi.
  std::vector<int> sorted = rep.phi;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> id(400);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_EQ(sorted, id);
  for (auto [u, v] : h.h.edges())
    EXPECT_TRUE(host.g.has_edge(rep.phi[static_cast<std::size_t>(u)], rep.phi[static_cast<std::size_t>(v)]));
}

TEST(Pipeline, ExtremalHostFailsAtACertifiedStage) {
  Graph g = gen_extremal_counterexample(400, 160);
  ClusterPartition p;
  for (int c = 0; c < 8; ++c) {
    VertexSet cls(50);
    std::iota(cls.begin(), cls.end(), 50 * c);
    p.classes.push_back(cls);
  }
  p.a_chord = Chord{0, 2};
  p.b_chord = Chord{1, 3};
  BandwidthH h = gen_bandwidth_bipartite_h(400, 3, 10, 7);
  auto rep = run_full_pipeline(g, p, bundle(h), Config{}, 1);
  EXPECT_FALSE(rep.success);
  EXPECT_FALSE(rep.failed_stage.empty());
  EXPECT_TRUE(rep.certified_failure) << rep.failed_stage << ": " << rep.message;
  EXPECT_EQ(rep.json["failed_stage"].get<std::string>(), rep.failed_stage);
}

TEST(Pipeline, MismatchedOrdersAreInvalidInput) {
  HostInstance host = gen_super_regular_host(2, 10, 0.5, 1);
  BandwidthH h = gen_bandwidth_bipartite_h(30, 2, 3, 1);
  auto rep = run_full_pipeline(host.g, host.partition, bundle(h), Config{}, 1);
  EXPECT_FALSE(rep.success);
  EXPECT_EQ(rep.failed_stage, "input");
  ASSERT_TRUE(rep.error);
  EXPECT_EQ(*rep.error, ErrorKind::invalid_input);
  EXPECT_FALSE(rep.certified_failure);
}

#ifdef BWEMBED_CLI_PATH

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(BWEMBED_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch_dir();
  const std::string host = (dir / "host.json").string(), h = (dir / "h.json").string(), out = (dir / "out.json").string();
  write_json_file(host, host_to_json(gen_super_regular_host(4, 50, 0.5, 1001)));
  write_json_file(h, h_bundle_to_json(gen_bandwidth_bipartite_h(400, 3, 10, 2001)));

  EXPECT_EQ(run_cli("--seed 1 --json-out " + out + " pipeline --host " + host + " --h " + h), 0);
  Json rep = read_json_file(out);
  EXPECT_TRUE(rep["success"].get<bool>());
  EXPECT_EQ(rep["phi"].size(), 400u);

  const std::string extremal = (dir / "extremal.json").string();
  write_json_file(extremal, graph_to_json(gen_extremal_counterexample(10, 4)));
  EXPECT_EQ(run_cli("check-degseq --graph " + extremal + " --gamma 0.1"), 2);

  const std::string broken = (dir / "broken.json").string();
  write_text(broken, "{\"n\": 3, \"edges\": [[0, 1],]");
  EXPECT_EQ(run_cli("check-degseq --graph " + broken), 1);
  EXPECT_EQ(run_cli("no-such-command"), 1);
  EXPECT_EQ(run_cli("--help"), 0);

  const std::string cfg = (dir / "bad.cfg").string();
  write_text(cfg, "lambda = 0.99\n");
  EXPECT_EQ(run_cli("--config " + cfg + " pipeline --host " + host + " --h " + h), 1);
  fs::remove_all(dir);
}

#endif

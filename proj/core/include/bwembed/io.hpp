#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bwembed/conditions.hpp"
#include "bwembed/embedder.hpp"
#include "bwembed/graph.hpp"
#include "bwembed/homomorphism.hpp"
#include "bwembed/hostgen.hpp"
#include "bwembed/partition.hpp"
#include "bwembed/partition_engine.hpp"
#include "bwembed/regularity.hpp"
#include "bwembed/shifted_walks.hpp"

namespace bwembed {

using Json = nlohmann::ordered_json;

// Parse errors become invalid_input with "source:line:column".
Json parse_json_text(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// {"n": n, "edges": [[u, v], ...]}; extra keys are ignored.
Graph graph_from_json(const Json& j);
Json graph_to_json(const Graph& g);

// {"classes": [[...], ...], "exceptional": [...], "a_chord": [i, j], "b_chord": [i, j]}
// or any object carrying that under "partition".
ClusterPartition partition_from_json(const Json& j);
Json partition_to_json(const ClusterPartition& p);

// {"pairs": [[u, v], ...]}
Matching matching_from_json(const Graph& g, const Json& j);
Json matching_to_json(const Matching& m);

// {"labels": [...], "bandwidth": b}, also accepted under "ordering".
BandwidthOrdering ordering_from_json(const Json& j);
Json ordering_to_json(const BandwidthOrdering& ord);

// A bare array, or the array stored under `key`.
std::vector<int> int_array_from_json(const Json& j, const std::string& key);

struct HBundle {
  Graph h;
  BandwidthOrdering ordering;
  std::vector<int> side;  // computed from h when absent
};
// Graph keys plus "ordering" (or "labels") and an optional "side".
HBundle h_bundle_from_json(const Json& j);
Json h_bundle_to_json(const BandwidthH& b);
Json host_to_json(const HostInstance& host);

Json to_json(const ExpanderVerdict& v);
Json to_json(const RegularityVerdict& v);
Json to_json(const SuperRegularVerdict& v);
Json to_json(const VertexMove& m);
Json to_json(const AlphaReport& a);
Json to_json(const MobilityResult& m);
Json to_json(const LemmaGResult& r);
Json to_json(const BetaCertificate& c);
Json to_json(const Homomorphism& hom, bool coin_logs);
Json to_json(const CompatibilityReport& c);
Json to_json(const EmbeddingVerdict& v);

}  // namespace bwembed

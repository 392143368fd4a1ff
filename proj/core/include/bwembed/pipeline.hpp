#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bwembed/config.hpp"
#include "bwembed/io.hpp"

namespace bwembed {

struct PipelineOptions {
  bool coin_logs = false;
  bool check_host = true;  // minimum degree and sampled expansion of G
};

struct PipelineReport {
  bool success = false;
  std::string failed_stage;
  std::optional<ErrorKind> error;
  bool certified_failure = false;  // the failure is a verdict, not a bug
  std::string message;
  std::vector<int> phi;
  Json json;  // stage by stage, with seeds and config
};

// Host checks -> host partition engine baseline -> homomorphism of H with
// the resulting sizes -> resize the host to |f^-1(i)| -> compatibility ->
// embedding -> independent verification. Never throws Error; the first
// failing stage is reported instead.
PipelineReport run_full_pipeline(const Graph& g, const ClusterPartition& host_partition, const HBundle& h, const Config& cfg,
                                 std::uint64_t seed, const PipelineOptions& opt = {});

}  // namespace bwembed

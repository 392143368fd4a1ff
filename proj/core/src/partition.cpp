#include "bwembed/partition.hpp"

#include <string>

#include "bwembed/common.hpp"

namespace bwembed {

std::vector<int> ClusterPartition::sizes() const {
  std::vector<int> s;
  for (const auto& c : classes) s.push_back(static_cast<int>(c.size()));
  return s;
}

std::vector<int> ClusterPartition::owner(int n) const {
  std::vector<int> own(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (int v : classes[i]) own[static_cast<std::size_t>(v)] = static_cast<int>(i);
  return own;
}

void ClusterPartition::validate(int n) const {
  if (classes.empty() || classes.size() % 2 != 0)
    fail(ErrorKind::invalid_input, "partition needs a positive even number of classes, got " + std::to_string(classes.size()));
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  auto mark = [&](int v) {
    if (v < 0 || v >= n) fail(ErrorKind::invalid_input, "partition names vertex " + std::to_string(v) + " outside the host");
    if (seen[static_cast<std::size_t>(v)]++) fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " appears twice in the partition");
  };
  for (const auto& c : classes)
    for (int v : c) mark(v);
  for (int v : exceptional) mark(v);
  for (int v = 0; v < n; ++v)
    if (!seen[static_cast<std::size_t>(v)]) fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " is not covered by the partition");
  auto check_chord = [&](const std::optional<Chord>& c, const char* name) {
    if (!c) return;
    if (c->first < 0 || c->second < 0 || c->first >= k() || c->second >= k() || c->first == c->second)
      fail(ErrorKind::invalid_input, std::string(name) + " chord must join two distinct pair indices below " + std::to_string(k()));
  };
  check_chord(a_chord, "A");
  check_chord(b_chord, "B");
}

}  // namespace bwembed

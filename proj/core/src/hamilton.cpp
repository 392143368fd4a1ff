#include <algorithm>
#include <string>

#include "bwembed/common.hpp"
#include "bwembed/partition_engine.hpp"

namespace bwembed {

namespace {

struct Search {
  const Graph& r;
  const HamiltonOptions& opt;
  std::vector<int> path;
  std::vector<char> used;
  std::int64_t nodes = 0;
  std::optional<CycleStructure> found;

  std::optional<CycleStructure> chords_for(const std::vector<int>& order) const {
    const int k = static_cast<int>(order.size()) / 2;
    std::optional<Chord> a, b;
    for (int i = 0; i < k && !a; ++i)
      for (int j = i + 1; j < k && !a; ++j)
        if (r.has_edge(order[static_cast<std::size_t>(2 * i)], order[static_cast<std::size_t>(2 * j)])) a = Chord{i, j};
    for (int i = 0; i < k && !b; ++i)
      for (int j = i + 1; j < k && !b; ++j)
        if (r.has_edge(order[static_cast<std::size_t>(2 * i + 1)], order[static_cast<std::size_t>(2 * j + 1)])) b = Chord{i, j};
    if (!a || !b) return std::nullopt;
    if (opt.accept && !opt.accept(order)) return std::nullopt;
    return CycleStructure{order, *a, *b, 0};
  }

  void try_cycle() {
    // The path read from position 0 and from position 1 gives the two
    // possible perfect matchings on the cycle.
    if (auto c = chords_for(path)) { found = c; return; }
    std::vector<int> rotated(path.begin() + 1, path.end());
    rotated.push_back(path.front());
    if (auto c = chords_for(rotated)) found = c;
  }

  void dfs() {
    if (found) return;
    if (++nodes > opt.node_budget) return;
    const int n = r.n();
    const int last = path.back();
    if (static_cast<int>(path.size()) == n) {
      if (r.has_edge(last, path.front())) try_cycle();
      return;
    }
    for (int v : r.neighbors(last)) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      dfs();
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
      if (found || nodes > opt.node_budget) return;
    }
  }
};

}  // namespace

CycleStructure find_hamilton_cycle_and_chords(const Graph& r, const HamiltonOptions& opt) {
  const int n = r.n();
  if (n < 4 || n % 2 != 0) fail(ErrorKind::feasibility, "reduced graph needs an even number (>= 4) of clusters, got " + std::to_string(n));
  if (n > 32) fail(ErrorKind::feasibility, "reduced graph has " + std::to_string(n) + " clusters; the backtracking cap is 32");
  Search s{r, opt, {0}, std::vector<char>(static_cast<std::size_t>(n), 0), 0, std::nullopt};
  s.used[0] = 1;
  s.dfs();
  if (s.found) {
    s.found->nodes_explored = s.nodes;
    return *s.found;
  }
  if (s.nodes > opt.node_budget)
    fail(ErrorKind::structural, "Hamilton cycle search exhausted its budget of " + std::to_string(opt.node_budget) + " nodes");
  fail(ErrorKind::structural, "no Hamilton cycle of the reduced graph carries both an A-chord and a B-chord");
}

ClusterPartition relabel_along_cycle(const ClusterPartition& p, const CycleStructure& c) {
  if (c.order.size() != p.classes.size()) fail(ErrorKind::internal, "cycle length does not match the class count");
  ClusterPartition out;
  out.exceptional = p.exceptional;
  for (int v : c.order) out.classes.push_back(p.classes[static_cast<std::size_t>(v)]);
  out.a_chord = c.a_chord;
  out.b_chord = c.b_chord;
  return out;
}

}  // namespace bwembed

#include "bwembed/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "bwembed/common.hpp"
#include "bwembed/matching.hpp"

namespace bwembed {

std::vector<VertexSet> classes_from_map(const std::vector<int>& f, int classes) {
  std::vector<VertexSet> w(static_cast<std::size_t>(classes));
  for (std::size_t v = 0; v < f.size(); ++v) {
    if (f[v] < 0 || f[v] >= classes)
      fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " maps to class " + std::to_string(f[v]) + ", outside 0.." +
                                         std::to_string(classes - 1));
    w[static_cast<std::size_t>(f[v])].push_back(static_cast<int>(v));
  }
  return w;
}

Graph matching_pairs_graph(int classes) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < classes; i += 2) e.emplace_back(i, i + 1);
  return Graph(classes, e);
}

namespace {

std::vector<int> owner_of(const std::vector<VertexSet>& classes, int n, const char* what) {
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int v : classes[c]) {
      if (v < 0 || v >= n || owner[static_cast<std::size_t>(v)] != -1)
        fail(ErrorKind::invalid_input, std::string(what) + " classes do not partition the vertex set (vertex " + std::to_string(v) + ")");
      owner[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
  for (int v = 0; v < n; ++v)
    if (owner[static_cast<std::size_t>(v)] < 0)
      fail(ErrorKind::invalid_input, std::string(what) + " vertex " + std::to_string(v) + " lies in no class");
  return owner;
}

// Component index per vertex of r.
std::vector<int> components(const Graph& r) {
  std::vector<int> comp(static_cast<std::size_t>(r.n()), -1);
  int next = 0;
  for (int s = 0; s < r.n(); ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::deque<int> q{s};
    comp[static_cast<std::size_t>(s)] = next;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : r.neighbors(u))
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = next;
          q.push_back(v);
        }
    }
    ++next;
  }
  return comp;
}

}  // namespace

CompatibilityReport check_compatibility(const Graph& h, const std::vector<VertexSet>& h_classes,
                                        const std::vector<int>& host_sizes, const Graph& r, const Graph& r_prime, double eps) {
  const int k = static_cast<int>(h_classes.size());
  if (static_cast<int>(host_sizes.size()) != k || r.n() != k || r_prime.n() != k)
    fail(ErrorKind::invalid_input, "class counts of H, the host sizes, R and R' differ");
  for (auto [u, v] : r_prime.edges())
    if (!r.has_edge(u, v)) fail(ErrorKind::invalid_input, "R' is not a subgraph of R");
  const int n = h.n();
  const auto owner = owner_of(h_classes, n, "H");

  CompatibilityReport rep;
  rep.gamma1 = true;
  for (int i = 0; i < k; ++i)
    if (static_cast<int>(h_classes[static_cast<std::size_t>(i)].size()) != host_sizes[static_cast<std::size_t>(i)]) {
      rep.gamma1 = false;
      rep.gamma1_failures.push_back(i);
    }

  rep.gamma2 = true;
  std::vector<char> in_s(static_cast<std::size_t>(n), 0);
  for (auto [x, y] : h.edges()) {
    int i = owner[static_cast<std::size_t>(x)], j = owner[static_cast<std::size_t>(y)];
    if (i == j) continue;
    if (!r.has_edge(i, j) && rep.gamma2) {
      rep.gamma2 = false;
      rep.gamma2_failure = std::make_pair(std::min(i, j), std::max(i, j));
      rep.gamma2_edge = Edge{x, y};
    }
    if (!r_prime.has_edge(i, j)) {
      in_s[static_cast<std::size_t>(x)] = 1;
      in_s[static_cast<std::size_t>(y)] = 1;
    }
  }

  rep.s_sets.assign(static_cast<std::size_t>(k), {});
  rep.t_sets.assign(static_cast<std::size_t>(k), {});
  std::vector<char> near_s(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (!in_s[static_cast<std::size_t>(v)]) continue;
    rep.s_sets[static_cast<std::size_t>(owner[static_cast<std::size_t>(v)])].push_back(v);
    for (int u : h.neighbors(v)) near_s[static_cast<std::size_t>(u)] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (near_s[static_cast<std::size_t>(v)] && !in_s[static_cast<std::size_t>(v)])
      rep.t_sets[static_cast<std::size_t>(owner[static_cast<std::size_t>(v)])].push_back(v);

  const auto comp = components(r_prime);
  const Fraction e = Fraction::from_double(eps);
  rep.gamma3 = true;
  for (int i = 0; i < k; ++i) {
    int min_size = host_sizes[static_cast<std::size_t>(i)];
    for (int j = 0; j < k; ++j)
      if (comp[static_cast<std::size_t>(j)] == comp[static_cast<std::size_t>(i)])
        min_size = std::min(min_size, host_sizes[static_cast<std::size_t>(j)]);
    rep.s_bound.push_back(e.floor_times(host_sizes[static_cast<std::size_t>(i)]));
    rep.t_bound.push_back(e.floor_times(min_size));
    bool ok = !e.below(static_cast<std::int64_t>(rep.s_sets[static_cast<std::size_t>(i)].size()), host_sizes[static_cast<std::size_t>(i)]) &&
              !e.below(static_cast<std::int64_t>(rep.t_sets[static_cast<std::size_t>(i)].size()), min_size);
    if (!ok) {
      rep.gamma3 = false;
      rep.gamma3_failures.push_back(i);
    }
  }
  return rep;
}

namespace {

struct Placer {
  const Graph& h;
  const Graph& g;
  const std::vector<VertexSet>& host_classes;
  const std::vector<int>& h_owner;
  std::vector<int> phi;
  std::vector<char> used;

  // Host vertices of the class of x adjacent to the images of all placed
  // neighbours of x.
  std::vector<int> candidates(int x) const {
    std::vector<int> out;
    for (int y : host_classes[static_cast<std::size_t>(h_owner[static_cast<std::size_t>(x)])]) {
      if (used[static_cast<std::size_t>(y)]) continue;
      bool ok = true;
      for (int z : h.neighbors(x)) {
        int img = phi[static_cast<std::size_t>(z)];
        if (img >= 0 && !g.has_edge(y, img)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(y);
    }
    return out;
  }

  // Candidates left to the unplaced neighbours of x if x goes to y.
  std::int64_t score(int x, int y) const {
    std::int64_t total = 0;
    for (int z : h.neighbors(x)) {
      if (phi[static_cast<std::size_t>(z)] >= 0) continue;
      for (int u : host_classes[static_cast<std::size_t>(h_owner[static_cast<std::size_t>(z)])]) {
        if (used[static_cast<std::size_t>(u)] || u == y || !g.has_edge(u, y)) continue;
        bool ok = true;
        for (int w : h.neighbors(z)) {
          int img = phi[static_cast<std::size_t>(w)];
          if (img >= 0 && !g.has_edge(u, img)) {
            ok = false;
            break;
          }
        }
        total += ok;
      }
    }
    return total;
  }

  void place(int x, int y) {
    phi[static_cast<std::size_t>(x)] = y;
    used[static_cast<std::size_t>(y)] = 1;
  }
  void unplace(int x) {
    used[static_cast<std::size_t>(phi[static_cast<std::size_t>(x)])] = 0;
    phi[static_cast<std::size_t>(x)] = -1;
  }

  struct SideMatch {
    std::vector<int> left;        // unplaced H vertices of the side
    const VertexSet* pool = nullptr;
    std::vector<int> match;       // pool index per left vertex, -1 if unmatched
    int unmatched = 0;
  };

  // Maximum matching of the unplaced vertices of `side` into the free host
  // vertices of their class.
  SideMatch match_side(const VertexSet& side, Rng& rng) const {
    SideMatch sm;
    for (int x : side)
      if (phi[static_cast<std::size_t>(x)] < 0) sm.left.push_back(x);
    if (sm.left.empty()) return sm;
    sm.pool = &host_classes[static_cast<std::size_t>(h_owner[static_cast<std::size_t>(sm.left.front())])];
    const auto& pool = *sm.pool;
    std::vector<int> index_of(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t q = 0; q < pool.size(); ++q) index_of[static_cast<std::size_t>(pool[q])] = static_cast<int>(q);
    std::vector<std::vector<int>> adj(sm.left.size());
    for (std::size_t q = 0; q < sm.left.size(); ++q) {
      for (int y : candidates(sm.left[q])) adj[q].push_back(index_of[static_cast<std::size_t>(y)]);
      rng.shuffle(adj[q]);
    }
    sm.match = hopcroft_karp(adj, static_cast<int>(pool.size()));
    sm.unmatched = static_cast<int>(std::count(sm.match.begin(), sm.match.end(), -1));
    return sm;
  }

  void apply(const SideMatch& sm, std::vector<int>& placed_now) {
    for (std::size_t q = 0; q < sm.left.size(); ++q) {
      place(sm.left[q], (*sm.pool)[static_cast<std::size_t>(sm.match[q])]);
      placed_now.push_back(sm.left[q]);
    }
  }

  // H-edges at x whose placed other end is not adjacent to img.
  int conflicts_at(int x, int img) const {
    int bad = 0;
    for (int w : h.neighbors(x)) {
      int iw = phi[static_cast<std::size_t>(w)];
      bad += iw >= 0 && !g.has_edge(img, iw);
    }
    return bad;
  }

  // Matches each side of a pair as far as possible and fills the rest of the
  // class with its remaining host vertices. Returns the number of vertices
  // that had to be placed without a matching edge.
  int fill_pair(const VertexSet& first, const VertexSet& second, Rng& rng) {
    int forced = 0;
    for (const VertexSet* side : {&first, &second}) {
      auto sm = match_side(*side, rng);
      if (sm.left.empty()) continue;
      std::vector<int> spare;
      std::vector<char> hit(sm.pool->size(), 0);
      for (int q : sm.match)
        if (q >= 0) hit[static_cast<std::size_t>(q)] = 1;
      for (std::size_t q = 0; q < sm.pool->size(); ++q)
        if (!hit[q] && !used[static_cast<std::size_t>((*sm.pool)[q])]) spare.push_back((*sm.pool)[q]);
      rng.shuffle(spare);
      std::size_t next = 0;
      for (std::size_t q = 0; q < sm.left.size(); ++q)
        place(sm.left[q], sm.match[q] >= 0 ? (*sm.pool)[static_cast<std::size_t>(sm.match[q])] : spare[next++]);
      forced += sm.unmatched;
    }
    return forced;
  }

  // Exchanges images inside a class until every H-edge maps to an edge. Each
  // round takes a random endpoint x of a broken edge, scores the exchange of
  // its image with every other vertex of its class and performs the best one,
  // or a worse one with a small probability. A round is one reassignment.
  bool repair(const std::vector<VertexSet>& h_classes, Rng& rng, std::int64_t& spent, std::int64_t stop_at) {
    constexpr double temperature = 0.35;
    std::vector<int> ties;
    for (;;) {
      std::vector<int> broken;
      for (int x = 0; x < h.n(); ++x)
        if (conflicts_at(x, phi[static_cast<std::size_t>(x)]) > 0) broken.push_back(x);
      if (broken.empty()) return true;
      if (spent >= stop_at) return false;
      ++spent;
      int x = broken[static_cast<std::size_t>(rng.below(broken.size()))];
      const int px = phi[static_cast<std::size_t>(x)];
      int best_delta = 0;
      ties.clear();
      for (int x2 : h_classes[static_cast<std::size_t>(h_owner[static_cast<std::size_t>(x)])]) {
        if (x2 == x) continue;
        int p2 = phi[static_cast<std::size_t>(x2)];
        int delta = conflicts_at(x, p2) + conflicts_at(x2, px) - conflicts_at(x, px) - conflicts_at(x2, p2);
        if (ties.empty() || delta < best_delta) {
          ties.assign(1, x2);
          best_delta = delta;
        } else if (delta == best_delta) {
          ties.push_back(x2);
        }
      }
      if (ties.empty()) return false;
      if (best_delta > 0 && rng.uniform01() >= std::exp(-best_delta / temperature)) continue;
      int x2 = ties[static_cast<std::size_t>(rng.below(ties.size()))];
      std::swap(phi[static_cast<std::size_t>(x)], phi[static_cast<std::size_t>(x2)]);
    }
  }
};

}  // namespace

Embedding embed_blowup(const Graph& h, const std::vector<VertexSet>& h_classes, const Graph& g_prime,
                       const std::vector<VertexSet>& host_classes, const Graph& r_prime, const VertexSet& constrained,
                       const EmbedOptions& opt) {
  const int k = static_cast<int>(h_classes.size());
  if (static_cast<int>(host_classes.size()) != k || r_prime.n() != k)
    fail(ErrorKind::invalid_input, "H and host class counts differ");
  if (h.n() != g_prime.n()) fail(ErrorKind::invalid_input, "H and the host must have the same order");
  for (int i = 0; i < k; ++i) {
    if (r_prime.degree(i) != 1) fail(ErrorKind::invalid_input, "R' must consist of disjoint single edges");
    if (h_classes[static_cast<std::size_t>(i)].size() != host_classes[static_cast<std::size_t>(i)].size())
      fail(ErrorKind::invalid_input, "class " + std::to_string(i) + " sizes differ between H and the host");
  }
  const int n = h.n();
  const auto h_owner = owner_of(h_classes, n, "H");
  owner_of(host_classes, n, "host");

  std::vector<int> order = constrained;
  const std::int64_t budget = static_cast<std::int64_t>(std::max(1, opt.budget_factor)) * n;
  Embedding out;
  Rng root(opt.seed);
  for (int restart = 0;; ++restart) {
    Rng rng = root.fork(static_cast<std::uint64_t>(restart));
    int forced = 0;
    Placer pl{h, g_prime, host_classes, h_owner, std::vector<int>(static_cast<std::size_t>(n), -1),
              std::vector<char>(static_cast<std::size_t>(n), 0)};
    // Most already-placed neighbours first; random tie-breaking per restart.
    std::vector<int> pending = order;
    rng.shuffle(pending);
    while (!pending.empty()) {
      std::size_t best = 0;
      int best_deg = -1;
      for (std::size_t q = 0; q < pending.size(); ++q) {
        int placed = 0;
        for (int z : h.neighbors(pending[q])) placed += pl.phi[static_cast<std::size_t>(z)] >= 0;
        if (placed > best_deg) {
          best_deg = placed;
          best = q;
        }
      }
      int x = pending[best];
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
      auto cand = pl.candidates(x);
      if (cand.empty()) {
        // Nothing fits: take the free vertex of the class breaking fewest edges.
        ++forced;
        int pick = -1, least = 0;
        for (int y : host_classes[static_cast<std::size_t>(h_owner[static_cast<std::size_t>(x)])]) {
          if (pl.used[static_cast<std::size_t>(y)]) continue;
          int c = pl.conflicts_at(x, y);
          if (pick < 0 || c < least) {
            pick = y;
            least = c;
          }
        }
        pl.place(x, pick);
        ++out.placements;
        continue;
      }
      rng.shuffle(cand);
      int pick = cand.front();
      std::int64_t pick_score = -1;
      for (int y : cand) {
        auto sc = pl.score(x, y);
        if (sc > pick_score) {
          pick_score = sc;
          pick = y;
        }
      }
      pl.place(x, pick);
      ++out.placements;
    }
    out.greedy_placed = static_cast<int>(order.size());

    for (int i = 0; i < k; ++i) {
      int j = r_prime.neighbors(i).front();
      if (j > i) forced += pl.fill_pair(h_classes[static_cast<std::size_t>(i)], h_classes[static_cast<std::size_t>(j)], rng);
    }
    out.placements += n - static_cast<std::int64_t>(order.size());
    out.forced = forced;

    const std::int64_t stop_at = std::min(budget, out.placements + std::max<std::int64_t>(n, budget / 3));
    if (pl.repair(h_classes, rng, out.placements, stop_at)) {
      out.phi = std::move(pl.phi);
      out.restarts = restart;
      return out;
    }
    if (out.placements > budget)
      fail(ErrorKind::embedding_not_found, "no embedding within the budget of " + std::to_string(budget) + " reassignments (" +
                                               std::to_string(restart + 1) + " restarts, " + std::to_string(forced) +
                                               " vertices placed without a fitting image in the last one)");
    out.placements += std::max(1, n / 4);  // a restart is never free, so the loop ends
  }
}

EmbeddingVerdict verify_embedding(const Graph& h, const Graph& g, const std::vector<int>& phi) {
  EmbeddingVerdict v;
  if (static_cast<int>(phi.size()) != h.n()) {
    v.failure = "phi has " + std::to_string(phi.size()) + " entries for " + std::to_string(h.n()) + " vertices";
    return v;
  }
  std::vector<int> seen(static_cast<std::size_t>(g.n()), -1);
  v.injective = true;
  for (int x = 0; x < h.n(); ++x) {
    int y = phi[static_cast<std::size_t>(x)];
    if (y < 0 || y >= g.n()) {
      v.injective = false;
      v.failure = "phi(" + std::to_string(x) + ") = " + std::to_string(y) + " is not a host vertex";
      return v;
    }
    if (seen[static_cast<std::size_t>(y)] >= 0) {
      v.injective = false;
      v.failure = "vertices " + std::to_string(seen[static_cast<std::size_t>(y)]) + " and " + std::to_string(x) + " both map to " +
                  std::to_string(y);
      return v;
    }
    seen[static_cast<std::size_t>(y)] = x;
  }
  v.edges = true;
  for (auto [a, b] : h.edges())
    if (!g.has_edge(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)])) {
      v.edges = false;
      v.failure = "edge (" + std::to_string(a) + "," + std::to_string(b) + ") maps to a non-edge";
      break;
    }
  v.holds = v.injective && v.edges;
  return v;
}

}  // namespace bwembed

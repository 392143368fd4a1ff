#include "bwembed/matching.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <deque>
#include <limits>

namespace bwembed {

std::vector<Edge> maximum_matching(const Graph& g) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BGraph bg(static_cast<std::size_t>(g.n()));
  for (auto [u, v] : g.edges()) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
  std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(static_cast<std::size_t>(g.n()));
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  std::vector<Edge> out;
  const auto null_v = boost::graph_traits<BGraph>::null_vertex();
  for (int v = 0; v < g.n(); ++v) {
    auto m = mate[static_cast<std::size_t>(v)];
    if (m != null_v && static_cast<int>(m) > v) out.emplace_back(v, static_cast<int>(m));
  }
  return out;
}

bool has_perfect_matching(const Graph& g) {
  return g.n() % 2 == 0 && static_cast<int>(maximum_matching(g).size()) * 2 == g.n();
}

std::vector<int> hopcroft_karp(const std::vector<std::vector<int>>& adj, int right_count) {
  const int nl = static_cast<int>(adj.size());
  constexpr int inf = std::numeric_limits<int>::max();
  std::vector<int> match_l(static_cast<std::size_t>(nl), -1), match_r(static_cast<std::size_t>(right_count), -1);
  std::vector<int> dist(static_cast<std::size_t>(nl));
  std::vector<std::size_t> it(static_cast<std::size_t>(nl));

  auto bfs = [&] {
    std::deque<int> q;
    bool found = false;
    for (int u = 0; u < nl; ++u) {
      if (match_l[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = 0;
        q.push_back(u);
      } else {
        dist[static_cast<std::size_t>(u)] = inf;
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int r : adj[static_cast<std::size_t>(u)]) {
        int w = match_r[static_cast<std::size_t>(r)];
        if (w < 0) found = true;
        else if (dist[static_cast<std::size_t>(w)] == inf) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push_back(w);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the BFS layering.
  auto dfs = [&](int root) {
    std::vector<int> stack{root};
    std::vector<int> via;  // right vertex used to descend
    while (!stack.empty()) {
      int u = stack.back();
      auto& i = it[static_cast<std::size_t>(u)];
      const auto& nbrs = adj[static_cast<std::size_t>(u)];
      bool descended = false;
      while (i < nbrs.size()) {
        int r = nbrs[i++];
        int w = match_r[static_cast<std::size_t>(r)];
        if (w < 0) {
          // augment along stack/via
          via.push_back(r);
          for (std::size_t k = 0; k < stack.size(); ++k) {
            int lu = stack[k];
            int rr = via[k];
            match_l[static_cast<std::size_t>(lu)] = rr;
            match_r[static_cast<std::size_t>(rr)] = lu;
          }
          return true;
        }
        if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1) {
          via.push_back(r);
          stack.push_back(w);
          descended = true;
          break;
        }
      }
      if (!descended) {
        dist[static_cast<std::size_t>(u)] = inf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int u = 0; u < nl; ++u)
      if (match_l[static_cast<std::size_t>(u)] < 0) dfs(u);
  }
  return match_l;
}

}  // namespace bwembed

#include "bwembed/conditions.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace bwembed {

std::string to_string(CheckMode m) {
  switch (m) {
    case CheckMode::exact: return "exact";
    case CheckMode::sampled: return "sampled";
    case CheckMode::heuristic: return "heuristic";
  }
  return "unknown";
}

CheckMode parse_check_mode(const std::string& s) {
  if (s == "exact") return CheckMode::exact;
  if (s == "sampled") return CheckMode::sampled;
  if (s == "heuristic") return CheckMode::heuristic;
  fail(ErrorKind::invalid_input, "unknown mode '" + s + "'");
}

VertexSet robust_neighborhood(const Graph& g, std::span<const int> s, Fraction nu) {
  std::vector<char> mask(static_cast<std::size_t>(g.n()), 0);
  for (int v : s) {
    if (v < 0 || v >= g.n()) fail(ErrorKind::invalid_input, "vertex " + std::to_string(v) + " is not in the graph");
    mask[static_cast<std::size_t>(v)] = 1;
  }
  VertexSet out;
  for (int v = 0; v < g.n(); ++v)
    if (nu.at_most(g.degree_into(v, mask), g.n())) out.push_back(v);
  return out;
}

namespace {

struct Window {
  int lo, hi;
};

Window size_window(int n, Fraction tau) {
  int lo = static_cast<int>(tau.ceil_times(n));
  int hi = n - lo;  // floor((1 - tau) n)
  return {lo, hi};
}

bool violates(int n, int s_size, int rn_size, Fraction nu) { return !nu.at_most(rn_size - s_size, n); }

// Exact search over bitmasks in [begin, end); returns the first violating mask.
std::optional<std::uint32_t> scan_masks(const std::vector<std::uint32_t>& adj, std::uint32_t begin, std::uint32_t end, Window w,
                                        int threshold, Fraction nu, std::int64_t& checked) {
  const int n = static_cast<int>(adj.size());
  for (std::uint32_t s = begin; s < end; ++s) {
    int size = std::popcount(s);
    if (size < w.lo || size > w.hi) continue;
    ++checked;
    int rn = 0;
    for (int v = 0; v < n; ++v) rn += std::popcount(adj[static_cast<std::size_t>(v)] & s) >= threshold ? 1 : 0;
    if (violates(n, size, rn, nu)) return s;
  }
  return std::nullopt;
}

}  // namespace

bool is_expansion_violation(const Graph& g, std::span<const int> s, Fraction nu, Fraction tau) {
  Window w = size_window(g.n(), tau);
  int size = static_cast<int>(s.size());
  if (size < w.lo || size > w.hi) return false;
  return violates(g.n(), size, static_cast<int>(robust_neighborhood(g, s, nu).size()), nu);
}

ExpanderVerdict check_robust_expander(const Graph& g, double nu_d, double tau_d, const ExpanderOptions& opt) {
  if (nu_d < 0 || nu_d > 1 || tau_d < 0 || tau_d > 1) fail(ErrorKind::invalid_input, "nu and tau must lie in [0,1]");
  ExpanderVerdict out;
  out.nu = Fraction::from_double(nu_d);
  out.tau = Fraction::from_double(tau_d);
  out.mode = opt.mode;
  const int n = g.n();
  Window w = size_window(n, out.tau);
  out.min_size = w.lo;
  out.max_size = w.hi;
  if (w.lo > w.hi || n == 0) return out;
  // |N(v) ∩ S| >= nu*n  <=>  |N(v) ∩ S| >= ceil(nu*n)
  const int threshold = static_cast<int>(out.nu.ceil_times(n));

  if (opt.mode == CheckMode::exact) {
    if (n > opt.exact_cap || n > 30)
      fail(ErrorKind::feasibility, "exact expander check supports n <= " + std::to_string(std::min(opt.exact_cap, 30)) + ", got " + std::to_string(n));
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
      for (int u : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= 1u << u;
    const std::uint32_t total = n == 32 ? 0 : (1u << n);
    unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    if (total < (1u << 14)) workers = 1;
    std::vector<std::optional<std::uint32_t>> found(workers);
    std::vector<std::int64_t> checked(workers, 0);
    std::vector<std::thread> pool;
    const std::uint32_t chunk = total / workers + 1;
    for (unsigned t = 0; t < workers; ++t) {
      std::uint32_t b = std::min<std::uint64_t>(total, static_cast<std::uint64_t>(chunk) * t);
      std::uint32_t e = std::min<std::uint64_t>(total, static_cast<std::uint64_t>(chunk) * (t + 1));
      auto job = [&, t, b, e] { found[t] = scan_masks(adj, b, e, w, threshold, out.nu, checked[t]); };
      if (workers == 1) job();
      else pool.emplace_back(job);
    }
    for (auto& th : pool) th.join();
    for (unsigned t = 0; t < workers; ++t) out.sets_checked += checked[t];
    for (unsigned t = 0; t < workers; ++t) {
      if (!found[t]) continue;
      VertexSet s;
      for (int v = 0; v < n; ++v)
        if (*found[t] >> v & 1u) s.push_back(v);
      out.holds = false;
      out.witness_rn_size = static_cast<int>(robust_neighborhood(g, s, out.nu).size());
      out.witness = std::move(s);
      break;
    }
    return out;
  }

  if (opt.mode != CheckMode::sampled) fail(ErrorKind::invalid_input, "expander check supports exact or sampled mode");
  Rng rng(opt.seed);
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (std::int64_t trial = 0; trial < opt.trials; ++trial) {
    int size = rng.uniform_int(w.lo, w.hi);
    VertexSet s = rng.subset(n, size);
    std::fill(mask.begin(), mask.end(), 0);
    for (int v : s) mask[static_cast<std::size_t>(v)] = 1;
    int rn = 0;
    for (int v = 0; v < n; ++v) rn += g.degree_into(v, mask) >= threshold ? 1 : 0;
    ++out.sets_checked;
    if (violates(n, size, rn, out.nu)) {
      out.holds = false;
      out.witness_rn_size = rn;
      out.witness = std::move(s);
      break;
    }
  }
  return out;
}

DegreeSequenceVerdict check_degree_sequence_condition(std::span<const int> d, double gamma_d) {
  if (!std::is_sorted(d.begin(), d.end())) fail(ErrorKind::invalid_input, "degree sequence must be non-decreasing");
  const Fraction gamma = Fraction::from_double(gamma_d);
  const int n = static_cast<int>(d.size());
  const int shift = static_cast<int>(gamma.floor_times(n));
  auto at = [&](int i) { return d[static_cast<std::size_t>(i - 1)]; };  // 1-based
  for (int i = 1; 2 * i < n; ++i) {
    if (gamma.at_most(at(i) - i, n)) continue;
    int j = n - i - shift;
    if (j >= 1 && at(j) >= n - i) continue;
    return {false, i};
  }
  return {};
}

OreVerdict check_ore_condition(const Graph& g, double gamma_d) {
  const Fraction gamma = Fraction::from_double(gamma_d);
  const int n = g.n();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (g.has_edge(x, y)) continue;
      if (!gamma.at_most(g.degree(x) + g.degree(y) - n, n)) return {false, Edge{x, y}};
    }
  return {};
}

}  // namespace bwembed

#include <algorithm>
#include <numeric>
#include <string>

#include "bwembed/homomorphism.hpp"

namespace bwembed {

std::vector<int> cycle_map_f1(const std::vector<int>& sizes, int k1, int n) {
  if (k1 < 1 || n < 1) fail(ErrorKind::parameter, "k1 and n must be positive");
  const int k = static_cast<int>(sizes.size()) / 2;
  std::vector<int> f1;
  for (int i = 0; i < k; ++i) {
    std::int64_t pair = static_cast<std::int64_t>(sizes[static_cast<std::size_t>(2 * i)]) + sizes[static_cast<std::size_t>(2 * i + 1)];
    std::int64_t copies = (pair * k1 + n - 1) / n;
    if (copies < 1) fail(ErrorKind::parameter, "class pair " + std::to_string(i) + " receives no pair of C'");
    for (std::int64_t c = 0; c < copies; ++c) {
      f1.push_back(2 * i);
      f1.push_back(2 * i + 1);
    }
  }
  return f1;
}

LemmaHParams resolve_lemma_h_params(const LemmaHParams& given, int n, const std::vector<int>& sizes, double xi) {
  LemmaHParams p = given;
  const int k = static_cast<int>(sizes.size()) / 2;
  if (p.k1 == 0) p.k1 = k;
  const int kp = static_cast<int>(cycle_map_f1(sizes, p.k1, n).size()) / 2;
  if (p.m2 == 0) p.m2 = 2;
  if (p.k2 == 0) {
    p.k2 = kp;
    if (p.m1 != 0) p.k2 = std::max(kp, static_cast<int>(xi * p.m1 / (6.0 * kp * p.m2)));
  }
  if (p.m1 == 0) p.m1 = p.m2 * (p.k2 + 1);
  return p;
}

namespace {

struct Bounds {
  // 12 k' m2 X - offset <= 2 xi n m2, see check_balance.
  std::int64_t scale = 0;
  std::int64_t off_p1_even = 0, off_p1_odd = 0, off_p2_even = 0, off_p2_odd = 0;
  std::int64_t rhs_x = 0;
};

}  // namespace

Homomorphism build_homomorphism(const Graph& h, const BandwidthOrdering& ord, const std::vector<int>& side_in,
                                const std::vector<int>& sizes, Chord chord, const Config& cfg, std::uint64_t seed,
                                const LemmaHParams& given) {
  const int n = h.n();
  const int classes = static_cast<int>(sizes.size());
  if (classes < 4 || classes % 2 != 0) fail(ErrorKind::invalid_input, "the cycle needs an even number (>= 4) of classes");
  const int k = classes / 2;
  std::int64_t total = 0;
  for (int x : sizes) total += x;
  if (total != n) fail(ErrorKind::invalid_input, "class sizes sum to " + std::to_string(total) + ", not n = " + std::to_string(n));
  for (int i = 0; i < classes; ++i)
    if (static_cast<std::int64_t>(sizes[static_cast<std::size_t>(i)]) * 3 * k <= n)
      fail(ErrorKind::parameter, "class size n_" + std::to_string(i) + " is not above n/3k");
  if (chord.first == chord.second || chord.first < 0 || chord.second < 0 || chord.first >= k || chord.second >= k)
    fail(ErrorKind::invalid_input, "chord needs two distinct pair indices below k");
  if (static_cast<int>(side_in.size()) != n) fail(ErrorKind::invalid_input, "bipartition has the wrong length");

  Homomorphism out;
  out.k = k;
  out.chord = chord;
  out.beta_n = verify_bandwidth_ordering(h, ord);
  std::vector<int> side = side_in;
  if (std::count(side.begin(), side.end(), 0) < std::count(side.begin(), side.end(), 1)) {
    for (int& s : side) s = 1 - s;
    out.swapped = true;
  }

  out.params = resolve_lemma_h_params(given, n, sizes, cfg.xi);
  const auto& P = out.params;
  out.f1 = cycle_map_f1(sizes, P.k1, n);
  const int kp = static_cast<int>(out.f1.size()) / 2;
  out.k_prime = kp;
  if (P.k2 < kp) fail(ErrorKind::parameter, "k2 = " + std::to_string(P.k2) + " is below k' = " + std::to_string(kp));

  out.segments = chop_into_segments(h, ord, side, out.beta_n, P.m1, std::max(1, h.max_degree()));
  out.grouping = group_and_split(out.segments, P.m2, P.k2, cfg.xi);
  const auto& dec = out.segments;
  const auto& grp = out.grouping;
  out.m3 = grp.m3;
  out.window_s = dec.window_s;
  const Fraction xif = Fraction::from_double(cfg.xi);
  const Fraction slack = Fraction::from_double(cfg.tally_slack);

  // C' pair indices of the chord: the first pair of C' over each end.
  auto first_over = [&](int pair) {
    for (int j = 0; j < kp; ++j)
      if (out.f1[static_cast<std::size_t>(2 * j)] == 2 * pair) return j;
    fail(ErrorKind::internal, "pair without a preimage in C'");
  };
  out.chord_prime = {first_over(chord.first), first_over(chord.second)};

  const std::int64_t D = dec.size_a() - dec.size_b();
  const std::int64_t m2 = P.m2, m3 = grp.m3, nn = n;
  Bounds bd;
  bd.scale = 12LL * kp * m2;
  bd.off_p1_even = 6 * m3 * nn + 3 * D * m2;
  bd.off_p1_odd = 6 * m3 * nn - 3 * D * m2;
  bd.off_p2_even = 6 * (m2 - m3) * nn - 3 * D * m2;
  bd.off_p2_odd = 6 * (m2 - m3) * nn + 3 * D * m2;
  bd.rhs_x = 2 * nn * m2;
  auto within = [&](std::int64_t x, std::int64_t offset) {
    std::int64_t lhs = bd.scale * x - offset;
    return lhs <= 0 || !xif.below(lhs, bd.rhs_x);
  };

  const int r = grp.pairs_per_large;
  const int first_phase_pairs = static_cast<int>(m3) * r;
  std::vector<int> pos(static_cast<std::size_t>(dec.m1), -1);
  std::vector<char> sober(static_cast<std::size_t>(dec.m1), 0);
  for (const auto& [b, e] : grp.sober)
    for (int t = b; t < e; ++t) sober[static_cast<std::size_t>(t)] = 1;

  const int retries = std::max(1, cfg.max_retries);
  bool done = false;
  for (int attempt = 0; attempt < retries && !done; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    HomAttempt log;
    auto place = [&](const std::vector<int>& order, const SegmentRun& run) {
      for (std::size_t q = 0; q < order.size(); ++q) pos[static_cast<std::size_t>(order[q])] = run.pairs[q];
    };
    auto range = [](int b, int e, bool reverse) {
      std::vector<int> v;
      if (reverse)
        for (int t = e - 1; t >= b; --t) v.push_back(t);
      else
        for (int t = b; t < e; ++t) v.push_back(t);
      return v;
    };

    log.i0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(kp)));
    int next = 2 * log.i0;
    for (int j = 0; j < m3; ++j) {
      auto so = range(grp.sober[static_cast<std::size_t>(j)].first, grp.sober[static_cast<std::size_t>(j)].second, false);
      auto run = sober_assign(static_cast<int>(so.size()), next, kp);
      place(so, run);
      next = (run.final_vertex + 1) % (2 * kp);
      auto dr = range(grp.drunken[static_cast<std::size_t>(j)].first, grp.drunken[static_cast<std::size_t>(j)].second, false);
      if (j + 1 < m3) {
        run = drunken_assign(static_cast<int>(dr.size()), next, kp, rng);
        log.coins.push_back(run.coins);
      } else {
        run = seeking_assign(static_cast<int>(dr.size()), next, 2 * out.chord_prime.first + 1, kp);
      }
      place(dr, run);
      next = (run.final_vertex + 1) % (2 * kp);
    }
    log.i0b = static_cast<int>(rng.below(static_cast<std::uint64_t>(kp)));
    next = 2 * log.i0b;
    for (int j = static_cast<int>(m2) - 1; j >= m3; --j) {
      auto so = range(grp.sober[static_cast<std::size_t>(j)].first, grp.sober[static_cast<std::size_t>(j)].second, true);
      auto run = sober_assign(static_cast<int>(so.size()), next, kp);
      place(so, run);
      next = (run.final_vertex + 1) % (2 * kp);
      auto dr = range(grp.drunken[static_cast<std::size_t>(j)].first, grp.drunken[static_cast<std::size_t>(j)].second, true);
      if (j > m3) {
        run = drunken_assign(static_cast<int>(dr.size()), next, kp, rng);
        log.coins.push_back(run.coins);
      } else {
        run = seeking_assign(static_cast<int>(dr.size()), next, 2 * out.chord_prime.second + 1, kp);
      }
      place(dr, run);
      next = (run.final_vertex + 1) % (2 * kp);
    }

    // f2: the first phase sends A to the first vertex of its pair, the
    // second phase exchanges the roles.
    out.f2.assign(static_cast<std::size_t>(n), 0);
    std::vector<std::int64_t> x1(static_cast<std::size_t>(2 * kp), 0), x2(static_cast<std::size_t>(2 * kp), 0);
    for (int v = 0; v < n; ++v) {
      const int t = dec.segment[static_cast<std::size_t>(v)];
      const bool phase1 = t < first_phase_pairs;
      const int a_side = dec.side[static_cast<std::size_t>(v)] == 0 ? 0 : 1;
      const int vertex = 2 * pos[static_cast<std::size_t>(t)] + (phase1 ? a_side : 1 - a_side);
      out.f2[static_cast<std::size_t>(v)] = vertex;
      if (sober[static_cast<std::size_t>(t)]) ++(phase1 ? x1 : x2)[static_cast<std::size_t>(vertex)];
    }
    log.balance = true;
    for (int p = 0; p < kp; ++p) {
      log.balance = log.balance && within(x1[static_cast<std::size_t>(2 * p)], bd.off_p1_even) &&
                    within(x1[static_cast<std::size_t>(2 * p + 1)], bd.off_p1_odd) &&
                    within(x2[static_cast<std::size_t>(2 * p)], bd.off_p2_even) &&
                    within(x2[static_cast<std::size_t>(2 * p + 1)], bd.off_p2_odd);
    }
    out.f.assign(static_cast<std::size_t>(n), 0);
    std::vector<std::int64_t> tally(static_cast<std::size_t>(classes), 0);
    for (int v = 0; v < n; ++v) {
      out.f[static_cast<std::size_t>(v)] = out.f1[static_cast<std::size_t>(out.f2[static_cast<std::size_t>(v)])];
      ++tally[static_cast<std::size_t>(out.f[static_cast<std::size_t>(v)])];
    }
    log.beta2 = true;
    for (int i = 0; i < classes; ++i) {
      std::int64_t over = tally[static_cast<std::size_t>(i)] - sizes[static_cast<std::size_t>(i)];
      if (over > 0 && xif.below(over, n)) log.beta2 = false;
      if (cfg.tally_slack > 0 && slack.below(std::abs(over), sizes[static_cast<std::size_t>(i)])) log.tally = false;
    }
    out.s.clear();
    for (auto [u, v] : h.edges()) {
      int a = std::min(out.f[static_cast<std::size_t>(u)], out.f[static_cast<std::size_t>(v)]);
      int b = std::max(out.f[static_cast<std::size_t>(u)], out.f[static_cast<std::size_t>(v)]);
      if (a % 2 != 0 || b != a + 1) {
        out.s.push_back(u);
        out.s.push_back(v);
      }
    }
    out.s = normalize_set(std::move(out.s), n);
    log.beta1 = !xif.below(static_cast<std::int64_t>(out.s.size()), n);
    if (attempt == 0) out.first_try_balance = log.balance;
    done = log.balance && log.beta1 && log.beta2 && log.tally;
    out.log.push_back(std::move(log));
    out.attempts = attempt + 1;
  }
  if (!done)
    fail(ErrorKind::retry_exhausted, "no schedule met the balance, (beta1), (beta2) and tally conditions within " + std::to_string(retries) + " attempts");

  out.certificate = check_hom_certificate(h, out.f, out.s, sizes, chord, cfg.xi);
  if (!out.certificate.all()) fail(ErrorKind::internal, "homomorphism certificate failed: " + out.certificate.failure);
  return out;
}

}  // namespace bwembed

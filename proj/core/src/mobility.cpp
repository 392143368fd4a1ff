#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "bwembed/common.hpp"
#include "bwembed/partition_engine.hpp"

namespace bwembed {

namespace {

struct State {
  const Graph& g;
  std::vector<int> orig;  // class of each vertex before any move
  std::vector<int> cur;
  std::vector<int> size;
  std::vector<VertexMove> moves;

  // Moves `count` vertices from class `from` to class `to`, each with at
  // least `need` neighbours in the original class `reference`.
  void move(int from, int to, int reference, std::int64_t need, std::int64_t count) {
    std::vector<std::pair<int, int>> cand;
    for (int v = 0; v < g.n(); ++v) {
      if (cur[static_cast<std::size_t>(v)] != from) continue;
      int deg = 0;
      for (int u : g.neighbors(v))
        if (orig[static_cast<std::size_t>(u)] == reference) ++deg;
      if (deg >= need) cand.emplace_back(-deg, v);
    }
    if (static_cast<std::int64_t>(cand.size()) < count)
      fail(ErrorKind::assignment, "class " + std::to_string(from) + " has " + std::to_string(cand.size()) +
                                      " vertices with at least " + std::to_string(need) + " neighbours in class " +
                                      std::to_string(reference) + ", need " + std::to_string(count));
    std::partial_sort(cand.begin(), cand.begin() + count, cand.end());
    for (std::int64_t t = 0; t < count; ++t) {
      int v = cand[static_cast<std::size_t>(t)].second;
      cur[static_cast<std::size_t>(v)] = to;
      --size[static_cast<std::size_t>(from)];
      ++size[static_cast<std::size_t>(to)];
      moves.push_back({v, from, to, reference, -cand[static_cast<std::size_t>(t)].first, need});
    }
  }
};

std::int64_t degree_need(double d, double eps, std::size_t reference_size) {
  if (d - eps <= 0) return 0;
  return static_cast<std::int64_t>(std::ceil((d - eps) * static_cast<double>(reference_size) - 1e-9));
}

}  // namespace

MobilityResult mobility_redistribute(const Graph& g, const ClusterPartition& p, const std::vector<int>& targets, double eps,
                                     double d, double xi, const MobilityOptions& opt) {
  p.validate(g.n());
  if (!p.exceptional.empty()) fail(ErrorKind::invalid_input, "mobility expects a partition without exceptional vertices");
  const int n = g.n();
  const int k = p.k();
  const int classes = p.class_count();
  if (static_cast<int>(targets.size()) != classes)
    fail(ErrorKind::invalid_input, "expected " + std::to_string(classes) + " target sizes, got " + std::to_string(targets.size()));

  std::vector<std::int64_t> a(static_cast<std::size_t>(k)), b(static_cast<std::size_t>(k));
  std::int64_t sum_a = 0, sum_b = 0;
  for (int i = 0; i < k; ++i) {
    a[static_cast<std::size_t>(i)] = targets[static_cast<std::size_t>(2 * i)] - static_cast<std::int64_t>(p.a(i).size());
    b[static_cast<std::size_t>(i)] = targets[static_cast<std::size_t>(2 * i + 1)] - static_cast<std::int64_t>(p.b(i).size());
    sum_a += a[static_cast<std::size_t>(i)];
    sum_b += b[static_cast<std::size_t>(i)];
  }

  MobilityResult res;
  const Fraction xif = Fraction::from_double(xi);
  auto record = [&](const std::string& name, bool holds, const std::string& detail) {
    res.hypotheses.push_back({name, holds, holds ? std::string{} : detail});
  };
  if (opt.check_hypotheses) {
    auto sizes = p.sizes();
    int small = -1;
    for (int c = 0; c < classes && small < 0; ++c)
      if (static_cast<std::int64_t>(3) * k * sizes[static_cast<std::size_t>(c)] < n) small = c;
    record("size", small < 0, "class " + std::to_string(small) + " is smaller than n/3k");

    int bad = -1;
    for (int c = 0; c < classes && bad < 0; ++c) {
      const auto& x = p.classes[static_cast<std::size_t>(c)];
      const auto& y = p.classes[static_cast<std::size_t>((c + 1) % classes)];
      if (!check_regular_pair(g, x, y, eps, d, opt.pair).regular) bad = c;
    }
    record("i", bad < 0, "cycle pair (" + std::to_string(bad) + "," + std::to_string((bad + 1) % classes) + ") is not regular");

    auto chord_ok = [&](const std::optional<Chord>& ch, int parity) {
      if (!ch || ch->first == ch->second) return false;
      return check_regular_pair(g, p.classes[static_cast<std::size_t>(2 * ch->first + parity)],
                                p.classes[static_cast<std::size_t>(2 * ch->second + parity)], eps, d, opt.pair)
          .regular;
    };
    record("ii", chord_ok(p.a_chord, 0), "the A-chord is missing or not regular");
    record("iii", chord_ok(p.b_chord, 1), "the B-chord is missing or not regular");

    bad = -1;
    for (int i = 0; i < k && bad < 0; ++i)
      if (!check_super_regular_pair(g, p.a(i), p.b(i), eps, d, opt.pair).super_regular) bad = i;
    record("iv", bad < 0, "pair " + std::to_string(bad) + " is not super-regular");

    // |a_i| < xi n, written as "not (|a_i| >= xi n)".
    bad = -1;
    for (int i = 0; i < k && bad < 0; ++i)
      if (xif.at_most(std::abs(a[static_cast<std::size_t>(i)]), n) || xif.at_most(std::abs(b[static_cast<std::size_t>(i)]), n)) bad = i;
    record("v", bad < 0, "pair " + std::to_string(bad) + " asks for a change of at least xi*n");
    record("vi", sum_a + sum_b == 0, "target changes sum to " + std::to_string(sum_a + sum_b));
    record("vii", std::abs(sum_a) == std::abs(sum_b) && !xif.below(std::abs(sum_a), n),
           "|sum a_i| = " + std::to_string(std::abs(sum_a)) + " exceeds xi*n");
    for (const auto& h : res.hypotheses)
      if (!h.holds) fail(ErrorKind::structural, "mobility hypothesis (" + h.name + ") fails: " + h.detail);
  } else if (sum_a + sum_b != 0) {
    fail(ErrorKind::structural, "mobility hypothesis (vi) fails: target changes sum to " + std::to_string(sum_a + sum_b));
  }

  State st{g, p.owner(n), p.owner(n), p.sizes(), {}};
  auto orig_size = [&](int c) { return p.classes[static_cast<std::size_t>(c)].size(); };

  if (sum_a > 0) {
    if (!p.b_chord) fail(ErrorKind::structural, "mobility needs a B-chord when the A-classes grow");
    const int i2 = p.b_chord->first, j2 = p.b_chord->second;
    st.move(2 * i2 + 1, 2 * j2, 2 * j2 + 1, degree_need(d, eps, orig_size(2 * j2 + 1)), sum_a);
  } else if (sum_a < 0) {
    if (!p.a_chord) fail(ErrorKind::structural, "mobility needs an A-chord when the B-classes grow");
    const int i1 = p.a_chord->first, j1 = p.a_chord->second;
    st.move(2 * i1, 2 * j1 + 1, 2 * j1, degree_need(d, eps, orig_size(2 * j1)), -sum_a);
    res.used_b_chord = false;
  }

  auto target = [&](int c) { return targets[static_cast<std::size_t>(c)]; };
  // A-classes: vertices travel A_j -> A_{j-1} -> ... -> A_i.
  while (true) {
    int i = -1;
    for (int t = 0; t < k && i < 0; ++t)
      if (st.size[static_cast<std::size_t>(2 * t)] < target(2 * t)) i = t;
    if (i < 0) break;
    int j = -1;
    for (int s = 1; s < k && j < 0; ++s) {
      int t = (i + s) % k;
      if (st.size[static_cast<std::size_t>(2 * t)] > target(2 * t)) j = t;
    }
    if (j < 0) fail(ErrorKind::internal, "A-side deficit without a matching surplus");
    for (int t = j; t != i; t = (t + k - 1) % k) {
      int prev = (t + k - 1) % k;
      st.move(2 * t, 2 * prev, 2 * prev + 1, degree_need(d, eps, orig_size(2 * prev + 1)), 1);
    }
  }
  // B-classes travel the other way: B_j -> B_{j+1} -> ... -> B_i.
  while (true) {
    int i = -1;
    for (int t = 0; t < k && i < 0; ++t)
      if (st.size[static_cast<std::size_t>(2 * t + 1)] < target(2 * t + 1)) i = t;
    if (i < 0) break;
    int j = -1;
    for (int s = 1; s < k && j < 0; ++s) {
      int t = (i - s + k) % k;
      if (st.size[static_cast<std::size_t>(2 * t + 1)] > target(2 * t + 1)) j = t;
    }
    if (j < 0) fail(ErrorKind::internal, "B-side deficit without a matching surplus");
    for (int t = j; t != i; t = (t + 1) % k) {
      int next = (t + 1) % k;
      st.move(2 * t + 1, 2 * next + 1, 2 * next, degree_need(d, eps, orig_size(2 * next)), 1);
    }
  }
  for (int c = 0; c < classes; ++c)
    if (st.size[static_cast<std::size_t>(c)] != target(c))
      fail(ErrorKind::internal, "class " + std::to_string(c) + " missed its target size");

  res.partition.classes.assign(static_cast<std::size_t>(classes), {});
  for (int v = 0; v < n; ++v) res.partition.classes[static_cast<std::size_t>(st.cur[static_cast<std::size_t>(v)])].push_back(v);
  res.partition.a_chord = p.a_chord;
  res.partition.b_chord = p.b_chord;
  res.churn.assign(static_cast<std::size_t>(classes), 0);
  for (int v = 0; v < n; ++v)
    if (st.cur[static_cast<std::size_t>(v)] != st.orig[static_cast<std::size_t>(v)]) {
      ++res.churn[static_cast<std::size_t>(st.cur[static_cast<std::size_t>(v)])];
      ++res.churn[static_cast<std::size_t>(st.orig[static_cast<std::size_t>(v)])];
    }
  res.churn_bound = static_cast<std::int64_t>(std::floor(5.0 * k * xi * n + 1e-9));
  res.moves = std::move(st.moves);
  return res;
}

}  // namespace bwembed

#include <algorithm>
#include <numeric>
#include <string>

#include "bwembed/homomorphism.hpp"

namespace bwembed {

int SegmentDecomposition::size_a() const {
  return static_cast<int>(std::count(side.begin(), side.end(), 0));
}
int SegmentDecomposition::size_b() const {
  return static_cast<int>(std::count(side.begin(), side.end(), 1));
}

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

bool in_window_s(std::int64_t s, std::int64_t n, std::int64_t m1, std::int64_t bn) {
  // i n/m1 - 2 bn < s <= i n/m1 + bn for some 1 <= i <= m1
  for (std::int64_t i = 1; i <= m1; ++i)
    if (i * n - 2 * bn * m1 < s * m1 && s * m1 <= i * n + bn * m1) return true;
  return false;
}

void rebuild_lists(SegmentDecomposition& dec) {
  dec.a.assign(static_cast<std::size_t>(dec.m1), {});
  dec.b.assign(static_cast<std::size_t>(dec.m1), {});
  for (int v = 0; v < dec.n; ++v) {
    auto& target = dec.side[static_cast<std::size_t>(v)] == 0 ? dec.a : dec.b;
    target[static_cast<std::size_t>(dec.segment[static_cast<std::size_t>(v)])].push_back(v);
  }
}

}  // namespace

SegmentDecomposition chop_into_segments(const Graph& h, const BandwidthOrdering& ord, const std::vector<int>& side,
                                        int beta_n, int m1, int max_degree) {
  const int n = h.n();
  if (m1 < 1 || m1 > n) fail(ErrorKind::parameter, "m1 must lie in [1, n]");
  if (beta_n < 0) fail(ErrorKind::parameter, "beta*n must be non-negative");
  if (max_degree < 1) fail(ErrorKind::parameter, "Delta must be at least 1");
  if (static_cast<int>(side.size()) != n) fail(ErrorKind::invalid_input, "bipartition has the wrong length");
  if (static_cast<int>(ord.labels.size()) != n) fail(ErrorKind::invalid_ordering, "ordering has the wrong length");
  for (auto [u, v] : h.edges())
    if (side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)])
      fail(ErrorKind::invalid_input, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") joins one colour class");

  SegmentDecomposition dec;
  dec.n = n;
  dec.m1 = m1;
  dec.beta_n = beta_n;
  dec.max_degree = max_degree;
  dec.side = side;
  dec.segment.assign(static_cast<std::size_t>(n), 0);
  const std::int64_t nn = n, mm = m1, bn = beta_n;
  for (int v = 0; v < n; ++v) {
    const std::int64_t s = ord.labels[static_cast<std::size_t>(v)] + 1;
    std::int64_t i;
    if (side[static_cast<std::size_t>(v)] == 0) {
      i = s > nn - bn ? mm : ceil_div((s + bn) * mm, nn);
    } else {
      i = ceil_div(s * mm, nn);
    }
    dec.segment[static_cast<std::size_t>(v)] = static_cast<int>(std::clamp<std::int64_t>(i, 1, mm) - 1);
    if (in_window_s(s, nn, mm, bn)) dec.window_s.push_back(v);
  }
  rebuild_lists(dec);

  // A segment below n/(4 Delta m1) borrows isolated vertices outside the
  // window set from its partner.
  dec.min_segment = static_cast<int>(ceil_div(nn, 4 * static_cast<std::int64_t>(max_degree) * mm));
  std::vector<char> in_s(static_cast<std::size_t>(n), 0);
  for (int v : dec.window_s) in_s[static_cast<std::size_t>(v)] = 1;
  for (int i = 0; i < m1; ++i) {
    for (int from_side = 1; from_side >= 0; --from_side) {
      auto& small = from_side == 1 ? dec.a[static_cast<std::size_t>(i)] : dec.b[static_cast<std::size_t>(i)];
      auto& big = from_side == 1 ? dec.b[static_cast<std::size_t>(i)] : dec.a[static_cast<std::size_t>(i)];
      if (static_cast<int>(small.size()) >= dec.min_segment) continue;
      VertexSet donors;
      for (int v : big)
        if (h.degree(v) == 0 && !in_s[static_cast<std::size_t>(v)]) donors.push_back(v);
      std::sort(donors.begin(), donors.end(), [&](int x, int y) {
        return ord.labels[static_cast<std::size_t>(x)] < ord.labels[static_cast<std::size_t>(y)];
      });
      std::size_t used = 0;
      while (static_cast<int>(small.size()) < dec.min_segment && used < donors.size() &&
             static_cast<int>(big.size()) > dec.min_segment) {
        int v = donors[used++];
        dec.side[static_cast<std::size_t>(v)] = 1 - from_side;
        big.erase(std::find(big.begin(), big.end(), v));
        small.insert(std::upper_bound(small.begin(), small.end(), v), v);
        ++dec.repaired;
      }
      if (static_cast<int>(small.size()) < dec.min_segment)
        fail(ErrorKind::decomposition, "segment " + std::string(from_side == 1 ? "A_" : "B_") + std::to_string(i) + " has " +
                                           std::to_string(small.size()) + " vertices and too few isolated vertices to reach " +
                                           std::to_string(dec.min_segment));
    }
  }

  for (auto [u, v] : h.edges()) {
    int a = dec.segment[static_cast<std::size_t>(u)], b = dec.segment[static_cast<std::size_t>(v)];
    if (a != b) {
      dec.s.push_back(u);
      dec.s.push_back(v);
    }
  }
  dec.s = normalize_set(std::move(dec.s), n);

  auto cert = certify_segments(h, dec);
  if (!cert.all()) fail(ErrorKind::decomposition, cert.failure);
  return dec;
}

SegmentCertificate certify_segments(const Graph& h, const SegmentDecomposition& dec) {
  SegmentCertificate c;
  const std::int64_t n = dec.n, m1 = dec.m1, bn = dec.beta_n;
  auto first_failure = [&](const std::string& what) {
    if (c.failure.empty()) c.failure = what;
  };
  c.a = true;
  for (int i = 0; i < dec.m1 && c.a; ++i) {
    std::int64_t sz = static_cast<std::int64_t>(dec.a[static_cast<std::size_t>(i)].size() + dec.b[static_cast<std::size_t>(i)].size());
    if (sz * m1 < n - bn * m1 || sz * m1 > n + bn * m1) {
      c.a = false;
      first_failure("(a) pair " + std::to_string(i) + " has " + std::to_string(sz) + " vertices");
    }
  }
  c.b = static_cast<std::int64_t>(dec.window_s.size()) <= 3 * m1 * bn;
  if (!c.b) first_failure("(b) the boundary windows hold " + std::to_string(dec.window_s.size()) + " vertices");

  std::vector<char> in_w(static_cast<std::size_t>(n), 0), in_s(static_cast<std::size_t>(n), 0);
  for (int v : dec.window_s) in_w[static_cast<std::size_t>(v)] = 1;
  for (int v : dec.s) in_s[static_cast<std::size_t>(v)] = 1;
  c.c = c.d = true;
  for (auto [u, v] : h.edges()) {
    int x = u, y = v;
    if (dec.side[static_cast<std::size_t>(x)] != 0) std::swap(x, y);  // x in A, y in B
    int i = dec.segment[static_cast<std::size_t>(x)], j = dec.segment[static_cast<std::size_t>(y)];
    bool inside = i == j;
    bool forward = j + 1 == i;  // (B_j, A_{j+1})
    bool in_window = in_w[static_cast<std::size_t>(u)] && in_w[static_cast<std::size_t>(v)];
    bool in_pruned = in_s[static_cast<std::size_t>(u)] && in_s[static_cast<std::size_t>(v)];
    if (!inside && (!in_window || !in_pruned) && c.c) {
      c.c = false;
      first_failure("(c) edge (" + std::to_string(u) + "," + std::to_string(v) + ") leaves its pair outside S");
    }
    if (!inside && !forward && c.d) {
      c.d = false;
      first_failure("(d) edge (" + std::to_string(u) + "," + std::to_string(v) + ") joins segments " + std::to_string(i) +
                    " and " + std::to_string(j));
    }
  }
  c.min_size = true;
  for (int i = 0; i < dec.m1 && c.min_size; ++i)
    if (static_cast<int>(dec.a[static_cast<std::size_t>(i)].size()) < dec.min_segment ||
        static_cast<int>(dec.b[static_cast<std::size_t>(i)].size()) < dec.min_segment) {
      c.min_size = false;
      first_failure("segment pair " + std::to_string(i) + " is below the minimum size " + std::to_string(dec.min_segment));
    }
  return c;
}

int select_m3(const std::vector<int>& sj, int imbalance, int n, double xi) {
  const int m2 = static_cast<int>(sj.size());
  const Fraction x20 = Fraction::from_double(xi / 20);
  const Fraction x10 = Fraction::from_double(xi / 10);
  const int lo = std::max<int>(1, static_cast<int>(x20.ceil_times(m2)));
  const int hi = m2 - static_cast<int>(x20.ceil_times(m2));
  std::int64_t prefix = 0;
  for (int m3 = 1; m3 <= hi; ++m3) {
    prefix += sj[static_cast<std::size_t>(m3 - 1)];
    if (m3 < lo) continue;
    // |prefix - imbalance/2| <= xi n / 20
    std::int64_t dev = std::abs(2 * prefix - imbalance);
    if (!x10.below(dev, n)) return m3;
  }
  fail(ErrorKind::parameter, "no split index m3 in [" + std::to_string(lo) + "," + std::to_string(hi) +
                                 "] brings the first-phase imbalance within xi*n/20 of (|A|-|B|)/2");
}

Grouping group_and_split(const SegmentDecomposition& dec, int m2, int k2, double xi) {
  if (m2 < 2 || dec.m1 % m2 != 0) fail(ErrorKind::parameter, "m2 must be at least 2 and divide m1");
  Grouping g;
  g.m2 = m2;
  g.k2 = k2;
  g.pairs_per_large = dec.m1 / m2;
  const int r = g.pairs_per_large;
  if (k2 < 1 || k2 > r) fail(ErrorKind::parameter, "k2 must lie in [1, m1/m2]");
  g.sj.assign(static_cast<std::size_t>(m2), 0);
  g.large_size.assign(static_cast<std::size_t>(m2), 0);
  for (int j = 0; j < m2; ++j)
    for (int t = j * r; t < (j + 1) * r; ++t) {
      int na = static_cast<int>(dec.a[static_cast<std::size_t>(t)].size());
      int nb = static_cast<int>(dec.b[static_cast<std::size_t>(t)].size());
      g.sj[static_cast<std::size_t>(j)] += na - nb;
      g.large_size[static_cast<std::size_t>(j)] += na + nb;
    }
  g.m3 = select_m3(g.sj, dec.size_a() - dec.size_b(), dec.n, xi);
  for (int j = 0; j < m2; ++j) {
    const int begin = j * r, end = (j + 1) * r;
    if (j < g.m3) {
      g.sober.emplace_back(begin, end - k2);
      g.drunken.emplace_back(end - k2, end);
    } else {
      g.drunken.emplace_back(begin, begin + k2);
      g.sober.emplace_back(begin + k2, end);
    }
  }
  return g;
}

}  // namespace bwembed

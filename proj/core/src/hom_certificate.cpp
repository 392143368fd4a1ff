#include <string>

#include "bwembed/homomorphism.hpp"

// Deliberately self-contained: recomputes (beta1)-(beta3) and homomorphism
// soundness from f, S and the sizes without touching the builder's data.

namespace bwembed {

BetaCertificate check_hom_certificate(const Graph& h, const std::vector<int>& f, const VertexSet& s,
                                      const std::vector<int>& sizes, Chord chord, double xi) {
  BetaCertificate c;
  const int n = h.n();
  const int classes = static_cast<int>(sizes.size());
  auto note = [&](const std::string& what) {
    if (c.failure.empty()) c.failure = what;
  };
  if (static_cast<int>(f.size()) != n || classes < 4 || classes % 2 != 0) {
    note("f or the size vector has the wrong shape");
    return c;
  }
  for (int v = 0; v < n; ++v)
    if (f[static_cast<std::size_t>(v)] < 0 || f[static_cast<std::size_t>(v)] >= classes) {
      note("f(" + std::to_string(v) + ") is outside the cycle");
      return c;
    }

  std::vector<char> in_s(static_cast<std::size_t>(n), 0);
  for (int v : s)
    if (v >= 0 && v < n) in_s[static_cast<std::size_t>(v)] = 1;
  const int c1 = 2 * chord.first + 1, c2 = 2 * chord.second + 1;

  c.homomorphism = true;
  c.beta3 = true;
  for (int u = 0; u < n; ++u)
    for (int v : h.neighbors(u)) {
      if (v < u) continue;
      int a = f[static_cast<std::size_t>(u)], b = f[static_cast<std::size_t>(v)];
      bool cycle_edge = (a + 1) % classes == b || (b + 1) % classes == a;
      bool chord_edge = (a == c1 && b == c2) || (a == c2 && b == c1);
      if (!cycle_edge && !chord_edge && c.homomorphism) {
        c.homomorphism = false;
        note("edge (" + std::to_string(u) + "," + std::to_string(v) + ") maps to the non-edge {" + std::to_string(a) + "," +
             std::to_string(b) + "}");
      }
      bool in_hs = in_s[static_cast<std::size_t>(u)] && in_s[static_cast<std::size_t>(v)];
      int lo = a < b ? a : b, hi = a < b ? b : a;
      bool matched = lo % 2 == 0 && hi == lo + 1;
      if (!in_hs && !matched && c.beta3) {
        c.beta3 = false;
        note("(beta3) edge (" + std::to_string(u) + "," + std::to_string(v) + ") outside H[S] maps to {" + std::to_string(a) + "," +
             std::to_string(b) + "}");
      }
    }

  // Integer comparisons against xi*n with xi held as a rational.
  const Fraction x = Fraction::from_double(xi);
  int s_size = 0;
  for (char b : in_s) s_size += b;
  c.beta1 = !x.below(s_size, n);
  if (!c.beta1) note("(beta1) |S| = " + std::to_string(s_size) + " exceeds xi*n");

  c.tally.assign(static_cast<std::size_t>(classes), 0);
  for (int v = 0; v < n; ++v) ++c.tally[static_cast<std::size_t>(f[static_cast<std::size_t>(v)])];
  c.beta2 = true;
  for (int i = 0; i < classes; ++i) {
    long long over = static_cast<long long>(c.tally[static_cast<std::size_t>(i)]) - sizes[static_cast<std::size_t>(i)];
    if (over > 0 && x.below(over, n)) {
      c.beta2 = false;
      note("(beta2) class " + std::to_string(i) + " receives " + std::to_string(c.tally[static_cast<std::size_t>(i)]) +
           " vertices, more than n_i + xi*n");
      break;
    }
  }
  return c;
}

}  // namespace bwembed

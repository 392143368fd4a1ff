#include "bwembed/common.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace bwembed {

__extension__ typedef __int128 i128;

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::invalid_ordering: return "invalid-ordering";
    case ErrorKind::feasibility: return "feasibility";
    case ErrorKind::validation: return "validation";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::structural: return "structural";
    case ErrorKind::assignment: return "assignment";
    case ErrorKind::balancing: return "balancing";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::decomposition: return "decomposition";
    case ErrorKind::retry_exhausted: return "retry-exhausted";
    case ErrorKind::embedding_not_found: return "embedding-not-found";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::string stage)
    : std::runtime_error(what), kind_(kind), stage_(std::move(stage)) {}

bool Error::certified() const noexcept {
  switch (kind_) {
    case ErrorKind::invalid_input:
    case ErrorKind::invalid_ordering:
    case ErrorKind::parameter:
    case ErrorKind::internal:
      return false;
    default:
      return true;
  }
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

Fraction Fraction::of(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) fail(ErrorKind::invalid_input, "fraction must be non-negative with positive denominator");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return Fraction{num / g, den / g};
}

Fraction Fraction::from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x) || x < 0) fail(ErrorKind::invalid_input, "parameter must be a finite non-negative number");
  // Continued-fraction convergents, keeping the last one within max_den.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(r);
    if (a > 9e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h2 = ai * h1 + h0;
    std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    double frac = r - a;
    if (frac < 1e-12) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return Fraction{static_cast<std::int64_t>(std::llround(x)), 1};
  return of(h1, k1);
}

std::int64_t Fraction::floor_times(std::int64_t x) const {
  i128 p = static_cast<i128>(num) * x;
  return static_cast<std::int64_t>(p / den);
}

std::int64_t Fraction::ceil_times(std::int64_t x) const {
  i128 p = static_cast<i128>(num) * x;
  return static_cast<std::int64_t>((p + den - 1) / den);
}

bool Fraction::at_most(std::int64_t count, std::int64_t x) const {
  return static_cast<i128>(count) * den >= static_cast<i128>(num) * x;
}

bool Fraction::below(std::int64_t count, std::int64_t x) const {
  return static_cast<i128>(count) * den > static_cast<i128>(num) * x;
}

bool operator<(const Fraction& a, const Fraction& b) {
  return static_cast<i128>(a.num) * b.den < static_cast<i128>(b.num) * a.den;
}
bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
bool operator==(const Fraction& a, const Fraction& b) { return !(a < b) && !(b < a); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) fail(ErrorKind::internal, "Rng::below with zero bound");
  // Rejection sampling on the top of the range keeps draws exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) fail(ErrorKind::internal, "Rng::uniform_int with empty range");
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

bool Rng::bernoulli(double p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  return uniform01() < p;
}

std::vector<int> Rng::subset(int n, int k) {
  // Floyd's algorithm.
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  for (int j = n - k; j < n; ++j) {
    int t = uniform_int(0, j);
    if (taken[static_cast<std::size_t>(t)]) t = j;
    taken[static_cast<std::size_t>(t)] = 1;
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i)
    if (taken[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng Rng::fork(std::uint64_t salt) { return Rng(mix_seed(engine_(), salt)); }

}  // namespace bwembed

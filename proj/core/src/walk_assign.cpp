#include <string>

#include "bwembed/homomorphism.hpp"

namespace bwembed {

namespace {

int start_pair(int initial_vertex, int k_prime) {
  if (k_prime < 1) fail(ErrorKind::parameter, "k' must be positive");
  if (initial_vertex < 0 || initial_vertex >= 2 * k_prime || initial_vertex % 2 != 0)
    fail(ErrorKind::invalid_input, "initial vertex " + std::to_string(initial_vertex) + " is not the first vertex of a pair of C'");
  return initial_vertex / 2;
}

int final_of(const SegmentRun& run, int initial_vertex, int k_prime) {
  // An empty segment ends just before its initial vertex.
  if (run.pairs.empty()) return (initial_vertex + 2 * k_prime - 1) % (2 * k_prime);
  return 2 * run.pairs.back() + 1;
}

}  // namespace

SegmentRun sober_assign(int pair_count, int initial_vertex, int k_prime) {
  const int p0 = start_pair(initial_vertex, k_prime);
  SegmentRun run;
  for (int q = 0; q < pair_count; ++q) run.pairs.push_back((p0 + q) % k_prime);
  run.final_vertex = final_of(run, initial_vertex, k_prime);
  return run;
}

SegmentRun drunken_replay(int pair_count, int initial_vertex, int k_prime, const std::vector<char>& coins) {
  int p = start_pair(initial_vertex, k_prime);
  if (pair_count > 0 && static_cast<int>(coins.size()) != pair_count - 1)
    fail(ErrorKind::invalid_input, "drunken segment of " + std::to_string(pair_count) + " pairs needs " +
                                       std::to_string(pair_count - 1) + " coins");
  SegmentRun run;
  run.coins = coins;
  for (int q = 0; q < pair_count; ++q) {
    if (q > 0 && coins[static_cast<std::size_t>(q - 1)]) p = (p + 1) % k_prime;
    run.pairs.push_back(p);
  }
  run.final_vertex = final_of(run, initial_vertex, k_prime);
  return run;
}

SegmentRun drunken_assign(int pair_count, int initial_vertex, int k_prime, Rng& rng) {
  std::vector<char> coins;
  for (int q = 1; q < pair_count; ++q) coins.push_back(rng.coin() ? 1 : 0);
  return drunken_replay(pair_count, initial_vertex, k_prime, coins);
}

SegmentRun seeking_assign(int pair_count, int initial_vertex, int target_vertex, int k_prime) {
  int p = start_pair(initial_vertex, k_prime);
  if (target_vertex < 0 || target_vertex >= 2 * k_prime || target_vertex % 2 != 1)
    fail(ErrorKind::invalid_input, "target vertex " + std::to_string(target_vertex) + " is not the second vertex of a pair of C'");
  const int target = target_vertex / 2;
  const int distance = (target - p + k_prime) % k_prime;
  if (pair_count < 1 || pair_count - 1 < distance)
    fail(ErrorKind::parameter, "seeking segment of " + std::to_string(pair_count) + " pairs cannot advance " +
                                   std::to_string(distance) + " steps to its target");
  SegmentRun run;
  for (int q = 0; q < pair_count; ++q) {
    if (q > 0 && p != target) p = (p + 1) % k_prime;
    run.pairs.push_back(p);
  }
  run.final_vertex = 2 * run.pairs.back() + 1;
  return run;
}

std::vector<double> binomial_mod_distribution(int trials, double p, int k) {
  if (trials < 0 || k < 1 || p < 0 || p > 1) fail(ErrorKind::invalid_input, "binomial residues need trials >= 0, k >= 1, p in [0,1]");
  std::vector<long double> cur(static_cast<std::size_t>(k), 0.0L), next(static_cast<std::size_t>(k));
  cur[0] = 1.0L;
  const long double q = 1.0L - p;
  for (int t = 0; t < trials; ++t) {
    for (int r = 0; r < k; ++r)
      next[static_cast<std::size_t>(r)] = q * cur[static_cast<std::size_t>(r)] + p * cur[static_cast<std::size_t>((r + k - 1) % k)];
    cur.swap(next);
  }
  return std::vector<double>(cur.begin(), cur.end());
}

}  // namespace bwembed

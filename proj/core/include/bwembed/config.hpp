#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace bwembed {

// Named constants of the embedding pipeline.
//   lambda      balancing tolerance: ||A_i| - |B_i|| <= lambda*n
//   xi          demand slack, mobility bound, homomorphism slack
//   eps_prime,
//   d_prime     regularity certified for the input clustering
//   eps, d      regularity certified for the output partition;
//               eps also bounds the compatibility sets
//   nu, tau     robust expansion of the host
//   eta         minimum degree fraction of the host
struct Config {
  int n0 = 1;
  double lambda = 0.02;
  double xi = 0.9;
  double eps_prime = 0.35;
  double eps = 0.6;
  double d = 0.25;
  double d_prime = 0.3;
  double nu = 0.005;
  double tau = 0.08;
  double eta = 0.09;

  // Homomorphism schedule; 0 selects the value derived from the others.
  int k1 = 0;
  int m1 = 16;
  int m2 = 2;
  int k2 = 4;
  int max_retries = 50;
  // Extra retry condition: every |f^-1(i)| within tally_slack * n_i of n_i.
  // 0 disables it.
  double tally_slack = 0.15;

  int pair_exact_cap = 14;
  int pair_random_seeds = 48;
  int expander_exact_cap = 20;
  std::int64_t expander_trials = 400;
  int embed_budget_factor = 10;

  // Throws parameter with the violated relation. The enforced relations are
  // 0 < lambda <= xi, 0 < eps_prime <= eps < 1, 0 < d <= d_prime <= 1,
  // 0 < nu <= tau < eta < 1.
  void validate() const;

  // `key = value` lines, '#' comments, optional [section] headers ignored.
  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  std::map<std::string, std::string> to_map() const;
};

}  // namespace bwembed

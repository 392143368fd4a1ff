#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bwembed {

enum class ErrorKind {
  invalid_input,
  invalid_ordering,
  feasibility,
  validation,
  not_found,
  structural,
  assignment,
  balancing,
  parameter,
  decomposition,
  retry_exhausted,
  embedding_not_found,
  internal,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type. `certified()` tells the
// CLI whether the failure is a mathematical verdict (exit 2) or a bug/IO
// problem (exit 1).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string stage = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }
  bool certified() const noexcept;

 private:
  ErrorKind kind_;
  std::string stage_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Non-negative rational num/den with den > 0; used for every threshold so
// comparisons never depend on floating point rounding.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction from_double(double x, std::int64_t max_den = 1'000'000);
  static Fraction of(std::int64_t num, std::int64_t den);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  // x * this, rounded down / up, for non-negative integer x.
  std::int64_t floor_times(std::int64_t x) const;
  std::int64_t ceil_times(std::int64_t x) const;
  // count >= this * x
  bool at_most(std::int64_t count, std::int64_t x) const;
  // count > this * x
  bool below(std::int64_t count, std::int64_t x) const;
};

bool operator<(const Fraction& a, const Fraction& b);
bool operator<=(const Fraction& a, const Fraction& b);
bool operator==(const Fraction& a, const Fraction& b);

// mt19937_64 whose output sequence is fixed by the C++ standard, with bounded
// draws implemented here so that results are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  int uniform_int(int lo, int hi);  // inclusive on both ends
  double uniform01();
  bool bernoulli(double p);
  bool coin() { return (engine_() >> 63) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Uniform k-subset of {0..n-1}, sorted.
  std::vector<int> subset(int n, int k);

  // Deterministic child stream for sub-stages.
  Rng fork(std::uint64_t salt);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace bwembed

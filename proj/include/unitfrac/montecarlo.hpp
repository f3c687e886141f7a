#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace unitfrac {

/// xoshiro256** (Blackman & Vigna), seeded through splitmix64. jump()
/// advances by 2^128 draws, which gives non-overlapping substreams.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();
  void jump();

  const std::array<std::uint64_t, 4>& state() const { return s_; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Draws sum_{i=1}^n eps_i / i. eps_i comes from bit 63 - ((i-1) mod 64) of
/// the ((i-1) / 64)-th draw of the sample (1 -> +1), and the sum runs from
/// i = n down to 1.
class WalkSampler {
 public:
  explicit WalkSampler(unsigned n);

  unsigned n() const { return static_cast<unsigned>(reciprocal_.size()); }
  double operator()(Xoshiro256& rng);

 private:
  std::vector<double> reciprocal_;
  std::vector<std::uint64_t> words_;
};

double sample_walk(unsigned n, Xoshiro256& rng);

struct McEstimate {
  unsigned n = 0;
  double t = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double ci_halfwidth = 0.0;
  std::uint64_t seed = 0;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

// Trials are cut into blocks of this size; block b draws from the seed's
// stream advanced by b jumps, whichever worker runs it.
inline constexpr std::uint64_t kTrialsPerBlock = 1U << 16;

McEstimate estimate_tail(unsigned n, double t, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

Moments moment_check(unsigned n, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

}  // namespace unitfrac

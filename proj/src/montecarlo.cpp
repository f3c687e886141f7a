#include "unitfrac/montecarlo.hpp"

#include <cmath>

#include "unitfrac/errors.hpp"
#include "unitfrac/parallel.hpp"

namespace unitfrac {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::vector<Xoshiro256> block_streams(std::uint64_t seed, std::uint64_t blocks) {
  std::vector<Xoshiro256> streams;
  streams.reserve(blocks);
  Xoshiro256 rng(seed);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    streams.push_back(rng);
    rng.jump();
  }
  return streams;
}

std::uint64_t block_count(std::uint64_t trials) { return (trials + kTrialsPerBlock - 1) / kTrialsPerBlock; }

std::uint64_t block_size(std::uint64_t trials, std::uint64_t b) {
  return std::min(kTrialsPerBlock, trials - b * kTrialsPerBlock);
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  for (auto& w : s_) w = splitmix64(seed);
}

Xoshiro256::result_type Xoshiro256::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

void Xoshiro256::jump() {
  static constexpr std::uint64_t kJump[] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                            0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
  std::array<std::uint64_t, 4> acc{};
  for (std::uint64_t word : kJump) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b)) {
        for (int k = 0; k < 4; ++k) acc[k] ^= s_[k];
      }
      (*this)();
    }
  }
  s_ = acc;
}

WalkSampler::WalkSampler(unsigned n) : reciprocal_(n), words_((n + 63) / 64) {
  if (n == 0) throw DomainError("sample_walk: n must be >= 1");
  for (unsigned i = 1; i <= n; ++i) reciprocal_[i - 1] = 1.0 / static_cast<double>(i);
}

double WalkSampler::operator()(Xoshiro256& rng) {
  for (auto& w : words_) w = rng();
  double s = 0.0;
  for (std::size_t k = reciprocal_.size(); k-- > 0;) {
    const bool plus = (words_[k / 64] >> (63 - k % 64)) & 1U;
    s += plus ? reciprocal_[k] : -reciprocal_[k];
  }
  return s;
}

double sample_walk(unsigned n, Xoshiro256& rng) { return WalkSampler(n)(rng); }

McEstimate estimate_tail(unsigned n, double t, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw DomainError("estimate_tail: trials must be >= 1");
  const WalkSampler prototype(n);
  const std::uint64_t blocks = block_count(trials);
  const auto streams = block_streams(seed, blocks);
  const auto hits_per_block = detail::run_tasks<std::uint64_t>(blocks, threads, [&](std::size_t b) {
    WalkSampler walk = prototype;
    Xoshiro256 rng = streams[b];
    std::uint64_t hits = 0;
    for (std::uint64_t k = block_size(trials, b); k > 0; --k) hits += walk(rng) >= t;
    return hits;
  });

  McEstimate e;
  e.n = n;
  e.t = t;
  e.trials = trials;
  e.seed = seed;
  for (auto h : hits_per_block) e.hits += h;
  e.p_hat = static_cast<double>(e.hits) / static_cast<double>(trials);
  e.ci_halfwidth = 1.96 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  return e;
}

Moments moment_check(unsigned n, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials < 2) throw DomainError("moment_check: trials must be >= 2");
  struct Partial {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  const WalkSampler prototype(n);
  const std::uint64_t blocks = block_count(trials);
  const auto streams = block_streams(seed, blocks);
  const auto parts = detail::run_tasks<Partial>(blocks, threads, [&](std::size_t b) {
    WalkSampler walk = prototype;
    Xoshiro256 rng = streams[b];
    Partial p;
    for (std::uint64_t k = block_size(trials, b); k > 0; --k) {
      const double v = walk(rng);
      p.count += 1.0;
      const double delta = v - p.mean;
      p.mean += delta / p.count;
      p.m2 += delta * (v - p.mean);
    }
    return p;
  });

  // Chan et al. pairwise merge, in block order.
  Partial total;
  for (const auto& p : parts) {
    const double count = total.count + p.count;
    const double delta = p.mean - total.mean;
    total.mean += delta * p.count / count;
    total.m2 += p.m2 + delta * delta * total.count * p.count / count;
    total.count = count;
  }
  return Moments{total.mean, total.m2 / (total.count - 1.0)};
}

}  // namespace unitfrac

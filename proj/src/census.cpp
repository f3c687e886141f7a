#include "unitfrac/census.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "unitfrac/errors.hpp"
#include "unitfrac/parallel.hpp"

namespace unitfrac {

namespace {

using Clock = std::chrono::steady_clock;
using u128 = unsigned __int128;

struct Counts {
  std::uint64_t le = 0;
  std::uint64_t eq = 0;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_range(unsigned n, unsigned limit, const char* op) {
  if (n == 0) throw DomainError(std::string(op) + ": n must be >= 1");
  if (n > limit) {
    throw CapacityError(std::string(op) + ": n = " + std::to_string(n) +
                            " exceeds the enumeration limit n <= " + std::to_string(limit),
                        limit);
  }
}

// weights[i - 1] = lcm(1..n) / i
std::vector<std::uint64_t> word_weights(unsigned n, const BigInt& l) {
  std::vector<std::uint64_t> w(n);
  for (unsigned i = 1; i <= n; ++i) w[i - 1] = static_cast<BigInt>(l / i).convert_to<std::uint64_t>();
  return w;
}

// Number of high bits fixed per task; leaves at least 8 free bits.
unsigned task_bits(unsigned n) { return n > 14 ? 6U : 0U; }

template <typename Fn>
Counts gray_enumerate(unsigned n, unsigned threads, Fn&& visit_task) {
  const unsigned hi = task_bits(n);
  auto parts = detail::run_tasks<Counts>(std::size_t{1} << hi, threads, visit_task);
  Counts total;
  for (const auto& c : parts) {
    total.le += c.le;
    total.eq += c.eq;
  }
  return total;
}

// ---- meet in the middle ----------------------------------------------------

template <typename Int>
Int from_big(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else if constexpr (std::is_same_v<Int, u128>) {
    const BigInt mask = (BigInt(1) << 64) - 1;
    const auto lo = static_cast<BigInt>(v & mask).convert_to<std::uint64_t>();
    const auto hi = static_cast<BigInt>(v >> 64).convert_to<std::uint64_t>();
    return (static_cast<u128>(hi) << 64) | lo;
  } else {
    return v.convert_to<Int>();
  }
}

// All subset sums of `weights` that do not exceed `cap`, sorted ascending.
// Built by repeated merging, so no separate sort pass is needed.
template <typename Int>
std::vector<Int> sorted_sums(const std::vector<Int>& weights, const Int& base, const Int& cap) {
  std::vector<Int> sums{base};
  std::vector<Int> shifted;
  std::vector<Int> merged;
  for (const Int& w : weights) {
    shifted.clear();
    for (const Int& s : sums) {
      Int t = s + w;
      if (t > cap) break;
      shifted.push_back(std::move(t));
    }
    merged.clear();
    merged.reserve(sums.size() + shifted.size());
    std::merge(sums.begin(), sums.end(), shifted.begin(), shifted.end(), std::back_inserter(merged));
    sums.swap(merged);
  }
  return sums;
}

template <typename Int>
Counts mitm_counts(unsigned n, const BigInt& l_big, unsigned threads) {
  const unsigned half = (n + 1) / 2;
  const Int l = from_big<Int>(l_big);
  std::vector<Int> lower;
  std::vector<Int> upper;
  for (unsigned i = 1; i <= n; ++i) {
    Int w = from_big<Int>(BigInt(l_big / i));
    (i <= half ? lower : upper).push_back(std::move(w));
  }
  const std::vector<Int> lower_sums = sorted_sums<Int>(lower, Int(0), l);

  // Split the upper half: the first `fixed` elements are decided per task.
  const unsigned fixed = std::min<unsigned>(static_cast<unsigned>(upper.size()), upper.size() > 12 ? 6U : 0U);
  const std::vector<Int> free_weights(upper.begin() + fixed, upper.end());

  auto task = [&](std::size_t pattern) -> Counts {
    Int base(0);
    for (unsigned j = 0; j < fixed; ++j) {
      if (pattern >> j & 1U) base += upper[j];
    }
    if (base > l) return {};
    const std::vector<Int> upper_sums = sorted_sums<Int>(free_weights, base, l);
    // Two pointers: le_end = #lower <= l - b, lt_end = #lower < l - b.
    Counts c;
    std::size_t le_end = lower_sums.size();
    std::size_t lt_end = lower_sums.size();
    for (const Int& b : upper_sums) {
      const Int rest = l - b;
      while (le_end > 0 && lower_sums[le_end - 1] > rest) --le_end;
      if (lt_end > le_end) lt_end = le_end;
      while (lt_end > 0 && lower_sums[lt_end - 1] >= rest) --lt_end;
      c.le += le_end;
      c.eq += le_end - lt_end;
    }
    return c;
  };

  auto parts = detail::run_tasks<Counts>(std::size_t{1} << fixed, threads, task);
  Counts total;
  for (const auto& c : parts) {
    total.le += c.le;
    total.eq += c.eq;
  }
  return total;
}

}  // namespace

std::string_view to_string(CensusMethod m) {
  switch (m) {
    case CensusMethod::BruteForce: return "brute";
    case CensusMethod::MeetInMiddle: return "mitm";
    case CensusMethod::SignWalk: return "signwalk";
  }
  return "unknown";
}

CensusResult count_bruteforce(unsigned n, const CensusOptions& opts) {
  check_range(n, kBruteForceMaxN, "count_bruteforce");
  const auto start = Clock::now();
  const BigInt l_big = lcm_upto(n);
  const std::uint64_t l = l_big.convert_to<std::uint64_t>();
  const auto w = word_weights(n, l_big);
  const unsigned hi = task_bits(n);
  const unsigned lo_bits = n - hi;

  const Counts c = gray_enumerate(n, opts.threads, [&](std::size_t pattern) -> Counts {
    std::uint64_t sum = 0;
    for (unsigned j = 0; j < hi; ++j) {
      if (pattern >> j & 1U) sum += w[lo_bits + j];
    }
    std::uint64_t state = 0;
    Counts local;
    local.le += sum <= l;
    local.eq += sum == l;
    const std::uint64_t steps = std::uint64_t{1} << lo_bits;
    for (std::uint64_t k = 1; k < steps; ++k) {
      const unsigned bit = static_cast<unsigned>(std::countr_zero(k));
      state ^= std::uint64_t{1} << bit;
      if (state >> bit & 1U) {
        sum += w[bit];
      } else {
        sum -= w[bit];
      }
      local.le += sum <= l;
      local.eq += sum == l;
    }
    return local;
  });

  return CensusResult{n, BigInt(c.le), BigInt(c.eq), CensusMethod::BruteForce, seconds_since(start)};
}

CensusResult count_mitm(unsigned n, const CensusOptions& opts) {
  check_range(n, kMitmMaxN, "count_mitm");
  const auto start = Clock::now();
  const BigInt l = lcm_upto(n);
  const Rational h = harmonic_exact(n);
  const BigInt total = h.numerator() * (l / h.denominator());  // L * H_n

  MitmArithmetic arith = opts.arithmetic;
  if (arith == MitmArithmetic::Auto) {
    if (n <= kWord64MaxN && total < (BigInt(1) << 63)) {
      arith = MitmArithmetic::Word64;
    } else if (total < (BigInt(1) << 127)) {
      arith = MitmArithmetic::Word128;
    } else {
      arith = MitmArithmetic::Big;
    }
  }

  Counts c;
  switch (arith) {
    case MitmArithmetic::Word64:
      if (n > kWord64MaxN || total >= (BigInt(1) << 63)) {
        throw DomainError("count_mitm: 64-bit arithmetic requires n <= " + std::to_string(kWord64MaxN));
      }
      c = mitm_counts<std::uint64_t>(n, l, opts.threads);
      break;
    case MitmArithmetic::Word128:
      if (total >= (BigInt(1) << 127)) throw DomainError("count_mitm: sums exceed 128-bit arithmetic");
      c = mitm_counts<u128>(n, l, opts.threads);
      break;
    case MitmArithmetic::Big:
    case MitmArithmetic::Auto:
      c = mitm_counts<BigInt>(n, l, opts.threads);
      break;
  }
  return CensusResult{n, BigInt(c.le), BigInt(c.eq), CensusMethod::MeetInMiddle, seconds_since(start)};
}

CensusResult count_signwalk(unsigned n, const CensusOptions& opts) {
  check_range(n, kSignWalkMaxN, "count_signwalk");
  const auto start = Clock::now();
  const BigInt l_big = lcm_upto(n);

  // threshold = (H_n - 2) * L, an integer since L * H_n is.
  const Rational scaled = (harmonic_exact(n) - Rational(2)) * Rational(l_big);
  if (scaled.denominator() != 1) throw std::logic_error("count_signwalk: L * H_n is not integral");
  const std::int64_t threshold = scaled.numerator().convert_to<std::int64_t>();

  std::vector<std::int64_t> step(n);
  std::int64_t all_minus = 0;
  for (unsigned i = 1; i <= n; ++i) {
    const auto w = static_cast<BigInt>(l_big / i).convert_to<std::int64_t>();
    step[i - 1] = 2 * w;
    all_minus -= w;
  }

  const unsigned hi = task_bits(n);
  const unsigned lo_bits = n - hi;
  const Counts c = gray_enumerate(n, opts.threads, [&](std::size_t pattern) -> Counts {
    std::int64_t walk = all_minus;
    for (unsigned j = 0; j < hi; ++j) {
      if (pattern >> j & 1U) walk += step[lo_bits + j];
    }
    std::uint64_t plus = 0;
    Counts local;
    local.le += walk >= threshold;
    local.eq += walk == threshold;
    const std::uint64_t steps = std::uint64_t{1} << lo_bits;
    for (std::uint64_t k = 1; k < steps; ++k) {
      const unsigned bit = static_cast<unsigned>(std::countr_zero(k));
      plus ^= std::uint64_t{1} << bit;
      walk += (plus >> bit & 1U) ? step[bit] : -step[bit];
      local.le += walk >= threshold;
      local.eq += walk == threshold;
    }
    return local;
  });

  return CensusResult{n, BigInt(c.le), BigInt(c.eq), CensusMethod::SignWalk, seconds_since(start)};
}

unsigned trivial_lower_bound_start(unsigned n) {
  if (n == 0) throw DomainError("trivial_lower_bound: n must be >= 1");
  // Walk s down from n while the tail sum 1/s + ... + 1/n stays <= 1.
  Rational tail(0);
  unsigned s = n + 1;
  while (s > 1) {
    Rational next = tail + Rational(1, s - 1);
    if (next > Rational(1)) break;
    tail = std::move(next);
    --s;
  }
  return s;
}

BigInt trivial_lower_bound(unsigned n) {
  const unsigned s = trivial_lower_bound_start(n);
  return BigInt(1) << (n - s + 1);
}

CensusResult count_auto(unsigned n, const CensusOptions& opts) {
  return n <= 22 ? count_bruteforce(n, opts) : count_mitm(n, opts);
}

}  // namespace unitfrac

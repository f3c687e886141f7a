#pragma once

#include <string_view>

#include "unitfrac/numerics.hpp"

namespace unitfrac {

enum class CensusMethod { BruteForce, MeetInMiddle, SignWalk };

std::string_view to_string(CensusMethod m);

struct CensusResult {
  unsigned n = 0;
  BigInt count_le_one;  // subsets with reciprocal sum <= 1, empty set included
  BigInt count_eq_one;  // subsets with reciprocal sum == 1
  CensusMethod method = CensusMethod::BruteForce;
  double elapsed_seconds = 0.0;
};

// Integer width used for the fixed-point subset sums of count_mitm.
enum class MitmArithmetic { Auto, Word64, Word128, Big };

struct CensusOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
  MitmArithmetic arithmetic = MitmArithmetic::Auto;
};

inline constexpr unsigned kBruteForceMaxN = 26;
inline constexpr unsigned kMitmMaxN = 52;
inline constexpr unsigned kSignWalkMaxN = 26;
inline constexpr unsigned kWord64MaxN = 40;

CensusResult count_bruteforce(unsigned n, const CensusOptions& opts = {});

/// Meet-in-the-middle census. The lower half {1..ceil(n/2)} is enumerated
/// with pruning at sum > 1 and sorted; every subset sum of the upper half is
/// then matched against it by binary search.
CensusResult count_mitm(unsigned n, const CensusOptions& opts = {});

/// Counts sign vectors with sum eps_i / i >= H_n - 2. Equals the <= 1 census
/// under delta_i = (1 + eps_i) / 2; ties are counted as count_eq_one.
CensusResult count_signwalk(unsigned n, const CensusOptions& opts = {});

/// 2^{n - s + 1} where s is the smallest index with H_n - H_{s-1} <= 1.
BigInt trivial_lower_bound(unsigned n);
unsigned trivial_lower_bound_start(unsigned n);

/// Chooses brute force for n <= 22 and meet-in-the-middle above.
CensusResult count_auto(unsigned n, const CensusOptions& opts = {});

}  // namespace unitfrac

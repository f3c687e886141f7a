#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "unitfrac/numerics.hpp"

namespace unitfrac {

/// Knobs of the exponential-moment tail bound
///   P(sum eps_i / i >= t) <= exp(-x t) * prod_i cosh(x / i).
struct ChernoffParams {
  unsigned n = 0;
  double t = 0.0;  // tail threshold
  unsigned m = 2;  // split index of the product relaxation
  double x = 0.0;  // exponential tilt

  void validate() const;
};

enum class BoundVariant { ExactCosh, Lemma, Optimized };

std::string_view to_string(BoundVariant v);

struct BoundReport {
  ChernoffParams params;
  BoundVariant variant = BoundVariant::ExactCosh;
  double log2_prob_bound = 0.0;  // clamped at 0
  double log2_count_bound = 0.0;  // n + log2_prob_bound
  double bits_per_n = 0.0;        // log2_count_bound / n
};

/// sum_{i=1}^n ln cosh(x / i)
double cosh_product_log(unsigned n, double x);

/// m ln((1 + e^{-2x/m}) / 2) + x H_m + x^2 / (2m): the log of the split-product
/// relaxation, which dominates cosh_product_log for every 2 <= m <= n.
double lemma_product_log(unsigned n, unsigned m, double x, const HarmonicTable& harmonics);
double lemma_product_log(unsigned n, unsigned m, double x);

/// Evaluates the tail bound at the given params. Accepts ExactCosh and Lemma;
/// the closed form at canonical params comes from optimized_bound_log2.
BoundReport tail_bound_log2(const ChernoffParams& params, BoundVariant variant,
                            const HarmonicTable& harmonics);
BoundReport tail_bound_log2(const ChernoffParams& params, BoundVariant variant);

/// t = H_n - 2, x = (H_n - H_m - 2) m. Throws DomainError unless H_n - H_m > 2.
ChernoffParams canonical_params(unsigned n, unsigned m, const HarmonicTable& harmonics);
ChernoffParams canonical_params(unsigned n, unsigned m);

/// Closed form of the Lemma bound at canonical params:
///   -(m/2) d^2 + m ln((1 + e^{-2d}) / 2),  d = H_n - H_m - 2.
BoundReport optimized_bound_log2(unsigned n, unsigned m, const HarmonicTable& harmonics);
BoundReport optimized_bound_log2(unsigned n, unsigned m);

/// Asymptotic per-n exponent (natural log) of the bound under m = c n.
double rate_function(double c);

struct RateMinimum {
  double c_star = 0.0;
  double f_star = 0.0;
  // Grid bracket handed to the golden-section search.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  // Final golden-section bracket.
  double final_lo = 0.0;
  double final_hi = 0.0;
  bool unimodal = true;  // false: grid pre-scan saw several local minima
};

inline constexpr int kRateGridPoints = 1000;

RateMinimum minimize_rate(double lo, double hi, double tol);

/// 1 + f / ln 2: the count exponent in bits per element.
double bits_per_n_asymptotic(double f_value);

inline constexpr unsigned kMinBoundN = 19;

/// Best bound over integer m in [2, max(2, n/8)] for the closed-form Lemma
/// bound and for the exact cosh bound with x refined by golden section.
BoundReport best_finite_bound(unsigned n);

struct ThresholdRow {
  unsigned n = 0;
  double bits_per_n = 0.0;
};

struct ThresholdReport {
  std::vector<ThresholdRow> rows;
  // Smallest sampled n from which every sampled bits_per_n <= target.
  std::optional<unsigned> crossing_n;
  double target = 0.93;
  // Sampled n >= 1000 where bits_per_n rose by more than 1e-6.
  std::vector<unsigned> monotonicity_violations;
};

inline constexpr unsigned kThresholdDenseLimit = 1000;
inline constexpr int kThresholdSamplesPerDecade = 40;

/// Every n in [19, min(n_max, 1000)], then 40 log-spaced samples per decade
/// up to n_max (n_max itself always included).
ThresholdReport threshold_report(unsigned n_max, unsigned threads = 1, double target = 0.93);

}  // namespace unitfrac

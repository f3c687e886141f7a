#include "unitfrac/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "unitfrac/errors.hpp"
#include "unitfrac/golden.hpp"
#include "unitfrac/parallel.hpp"

namespace unitfrac {

namespace {

constexpr double kRefineTol = 1e-10;

void require_table(const HarmonicTable& h, unsigned n) {
  if (h.size() < n) throw DomainError("harmonic table shorter than n = " + std::to_string(n));
}

BoundReport make_report(const ChernoffParams& p, BoundVariant v, double log_prob) {
  BoundReport r;
  r.params = p;
  r.variant = v;
  r.log2_prob_bound = std::min(0.0, log_prob / std::numbers::ln2);
  r.log2_count_bound = static_cast<double>(p.n) + r.log2_prob_bound;
  r.bits_per_n = r.log2_count_bound / static_cast<double>(p.n);
  return r;
}

// Strict weak order used to pick the winning report.
bool better(const BoundReport& a, const BoundReport& b) {
  return std::tie(a.log2_count_bound, a.params.m, a.params.x) <
         std::tie(b.log2_count_bound, b.params.m, b.params.x);
}

}  // namespace

void ChernoffParams::validate() const {
  if (n == 0) throw DomainError("ChernoffParams: n must be >= 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("ChernoffParams: x must be finite and > 0");
  if (!std::isfinite(t)) throw DomainError("ChernoffParams: t must be finite");
  if (m < 2 || m > n) throw DomainError("ChernoffParams: need 2 <= m <= n");
}

std::string_view to_string(BoundVariant v) {
  switch (v) {
    case BoundVariant::ExactCosh: return "exact";
    case BoundVariant::Lemma: return "lemma";
    case BoundVariant::Optimized: return "optimized";
  }
  return "unknown";
}

double cosh_product_log(unsigned n, double x) {
  if (!std::isfinite(x)) throw DomainError("cosh_product_log: x must be finite");
  if (!(x > 0.0)) throw DomainError("cosh_product_log: x must be > 0");
  if (n == 0) throw DomainError("cosh_product_log: n must be >= 1");
  double s = 0.0;
  for (unsigned i = n; i >= 1; --i) s += log_cosh(x / static_cast<double>(i));
  return s;
}

double lemma_product_log(unsigned n, unsigned m, double x, const HarmonicTable& harmonics) {
  if (m < 2 || m > n) throw DomainError("lemma_product_log: need 2 <= m <= n");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("lemma_product_log: x must be finite and > 0");
  require_table(harmonics, m);
  const double md = static_cast<double>(m);
  return md * log_half_one_plus_exp_neg(2.0 * x / md) + x * harmonics(m) + x * x / (2.0 * md);
}

double lemma_product_log(unsigned n, unsigned m, double x) {
  if (m < 2 || m > n) throw DomainError("lemma_product_log: need 2 <= m <= n");
  return lemma_product_log(n, m, x, HarmonicTable(m));
}

BoundReport tail_bound_log2(const ChernoffParams& params, BoundVariant variant,
                            const HarmonicTable& harmonics) {
  params.validate();
  double product = 0.0;
  switch (variant) {
    case BoundVariant::ExactCosh:
      product = cosh_product_log(params.n, params.x);
      break;
    case BoundVariant::Lemma:
      product = lemma_product_log(params.n, params.m, params.x, harmonics);
      break;
    case BoundVariant::Optimized:
      throw DomainError("tail_bound_log2: the optimized variant is evaluated by optimized_bound_log2");
  }
  return make_report(params, variant, -params.x * params.t + product);
}

BoundReport tail_bound_log2(const ChernoffParams& params, BoundVariant variant) {
  params.validate();
  return tail_bound_log2(params, variant, HarmonicTable(params.m));
}

ChernoffParams canonical_params(unsigned n, unsigned m, const HarmonicTable& harmonics) {
  if (m < 2 || m > n) throw DomainError("canonical_params: need 2 <= m <= n");
  require_table(harmonics, n);
  const double gap = harmonics(n) - harmonics(m) - 2.0;
  if (!(gap > 0.0)) {
    throw DomainError("canonical_params: H_n - H_m - 2 <= 0 for n = " + std::to_string(n) +
                      ", m = " + std::to_string(m) + " (n too small for this m)");
  }
  return ChernoffParams{n, harmonics(n) - 2.0, m, gap * static_cast<double>(m)};
}

ChernoffParams canonical_params(unsigned n, unsigned m) {
  if (m < 2 || m > n) throw DomainError("canonical_params: need 2 <= m <= n");
  return canonical_params(n, m, HarmonicTable(n));
}

BoundReport optimized_bound_log2(unsigned n, unsigned m, const HarmonicTable& harmonics) {
  const ChernoffParams p = canonical_params(n, m, harmonics);
  const double gap = harmonics(n) - harmonics(m) - 2.0;
  const double md = static_cast<double>(m);
  const double log_prob = -0.5 * md * gap * gap + md * log_half_one_plus_exp_neg(2.0 * gap);
  return make_report(p, BoundVariant::Optimized, log_prob);
}

BoundReport optimized_bound_log2(unsigned n, unsigned m) {
  if (m < 2 || m > n) throw DomainError("optimized_bound_log2: need 2 <= m <= n");
  return optimized_bound_log2(n, m, HarmonicTable(n));
}

double rate_function(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("rate_function: c must be finite and > 0");
  const double gap = -std::log(c) - 2.0;
  return -0.5 * c * gap * gap + c * log_half_one_plus_exp_neg(2.0 * gap);
}

RateMinimum minimize_rate(double lo, double hi, double tol) {
  if (!(lo > 0.0) || !(lo < hi) || hi > 0.125) {
    throw DomainError("minimize_rate: need 0 < lo < hi <= 1/8");
  }
  if (!(tol > 0.0)) throw DomainError("minimize_rate: tol must be > 0");

  std::vector<double> grid(kRateGridPoints);
  std::vector<double> values(kRateGridPoints);
  const double step = (hi - lo) / (kRateGridPoints - 1);
  for (int k = 0; k < kRateGridPoints; ++k) {
    grid[k] = k + 1 == kRateGridPoints ? hi : lo + step * k;
    values[k] = rate_function(grid[k]);
  }

  // Unimodality guard: the discrete slope may change sign (- to +) only once.
  int local_minima = 0;
  for (int k = 0; k < kRateGridPoints; ++k) {
    const bool left_ok = k == 0 || values[k] < values[k - 1];
    const bool right_ok = k + 1 == kRateGridPoints || values[k] <= values[k + 1];
    if (left_ok && right_ok) ++local_minima;
  }
  const auto best = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());

  RateMinimum out;
  out.bracket_lo = grid[std::max(best - 1, 0)];
  out.bracket_hi = grid[std::min(best + 1, kRateGridPoints - 1)];
  if (local_minima != 1) {
    out.unimodal = false;
    out.c_star = grid[best];
    out.f_star = values[best];
    out.final_lo = out.final_hi = out.c_star;
    return out;
  }
  const GoldenResult g = golden_section_minimize(rate_function, out.bracket_lo, out.bracket_hi, tol);
  out.c_star = g.x;
  out.f_star = g.fx;
  out.final_lo = g.lo;
  out.final_hi = g.hi;
  return out;
}

double bits_per_n_asymptotic(double f_value) { return 1.0 + f_value / std::numbers::ln2; }

BoundReport best_finite_bound(unsigned n) {
  if (n < kMinBoundN) {
    throw DomainError("best_finite_bound: needs n >= " + std::to_string(kMinBoundN) +
                      " (no admissible split index below)");
  }
  const HarmonicTable harmonics(n);
  const unsigned m_max = std::max(2U, n / 8);

  std::optional<BoundReport> best;
  std::vector<ChernoffParams> canonical;
  for (unsigned m = 2; m <= m_max; ++m) {
    if (!(harmonics(n) - harmonics(m) - 2.0 > 0.0)) continue;
    BoundReport r = optimized_bound_log2(n, m, harmonics);
    canonical.push_back(r.params);
    if (!best || better(r, *best)) best = r;
  }
  if (canonical.empty()) throw DomainError("best_finite_bound: no admissible m for n = " + std::to_string(n));

  // Exact cosh bound, x refined inside [x_m / 4, 4 x_m] for each m. The
  // objective is convex in x and independent of m, so the per-m refined
  // optimum is its hull minimizer clamped into that m's bracket.
  const double t = harmonics(n) - 2.0;
  auto objective = [&](double x) { return -x * t + cosh_product_log(n, x); };
  double hull_lo = std::numeric_limits<double>::infinity();
  double hull_hi = 0.0;
  for (const auto& p : canonical) {
    hull_lo = std::min(hull_lo, p.x / 4.0);
    hull_hi = std::max(hull_hi, p.x * 4.0);
  }
  const double x_star = golden_section_minimize(objective, hull_lo, hull_hi, kRefineTol).x;

  const ChernoffParams* inside = nullptr;
  const ChernoffParams* below = nullptr;  // bracket entirely left of x_star
  const ChernoffParams* above = nullptr;  // bracket entirely right of x_star
  for (const auto& p : canonical) {
    if (p.x / 4.0 <= x_star && x_star <= 4.0 * p.x) {
      inside = &p;
      break;
    }
    if (4.0 * p.x < x_star && (!below || p.x > below->x)) below = &p;
    if (p.x / 4.0 > x_star && (!above || p.x < above->x)) above = &p;
  }
  std::vector<ChernoffParams> exact_candidates;
  if (inside) {
    exact_candidates.push_back({n, t, inside->m, x_star});
  } else {
    if (below) exact_candidates.push_back({n, t, below->m, 4.0 * below->x});
    if (above) exact_candidates.push_back({n, t, above->m, above->x / 4.0});
  }
  for (const auto& p : exact_candidates) {
    BoundReport r = tail_bound_log2(p, BoundVariant::ExactCosh, harmonics);
    if (better(r, *best)) best = r;
  }
  return *best;
}

ThresholdReport threshold_report(unsigned n_max, unsigned threads, double target) {
  if (n_max < kMinBoundN) throw DomainError("threshold_report: n_max must be >= " + std::to_string(kMinBoundN));

  std::vector<unsigned> ns;
  for (unsigned n = kMinBoundN; n <= std::min(n_max, kThresholdDenseLimit); ++n) ns.push_back(n);
  for (int k = 1;; ++k) {
    const double v = kThresholdDenseLimit * std::pow(10.0, static_cast<double>(k) / kThresholdSamplesPerDecade);
    const auto n = static_cast<unsigned>(std::llround(v));
    if (n >= n_max) break;
    if (n > ns.back()) ns.push_back(n);
  }
  if (ns.back() != n_max) ns.push_back(n_max);

  const auto bits = detail::run_tasks<double>(ns.size(), threads, [&](std::size_t k) {
    return best_finite_bound(ns[k]).bits_per_n;
  });

  ThresholdReport report;
  report.target = target;
  for (std::size_t k = 0; k < ns.size(); ++k) report.rows.push_back({ns[k], bits[k]});
  for (std::size_t k = ns.size(); k-- > 0;) {
    if (bits[k] > target) break;
    report.crossing_n = ns[k];
  }
  for (std::size_t k = 1; k < ns.size(); ++k) {
    if (ns[k - 1] >= kThresholdDenseLimit && bits[k] > bits[k - 1] + 1e-6) {
      report.monotonicity_violations.push_back(ns[k]);
    }
  }
  return report;
}

}  // namespace unitfrac

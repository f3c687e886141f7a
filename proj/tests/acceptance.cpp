// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "regression_counts.hpp"
#include "unitfrac/bounds.hpp"
#include "unitfrac/census.hpp"
#include "unitfrac/montecarlo.hpp"
#include "unitfrac/numerics.hpp"

using namespace unitfrac;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double log2_of(const BigInt& v) { return std::log2(v.convert_to<double>()); }

Outcome ac1_constants() {
  Outcome o;
  const double f = rate_function(0.0384235);
  const double bits = bits_per_n_asymptotic(-0.054);
  o.detail.precision(17);
  o.detail << "f(0.0384235)=" << f << " bits(-0.054)=" << bits;
  o.require(f <= -0.0541, "f(0.0384235) <= -0.0541");
  o.require(bits <= 0.93, "bits_per_n_asymptotic(-0.054) <= 0.93");
  o.require(std::exp(-0.054) <= std::pow(2.0, -0.07), "e^-0.054 <= 2^-0.07");
  return o;
}

Outcome ac2_optimizer() {
  Outcome o;
  const RateMinimum r = minimize_rate(1e-4, 0.124, 1e-10);
  o.detail.precision(12);
  o.detail << "c*=" << r.c_star << " f*=" << r.f_star << " bracket=[" << r.bracket_lo << ", " << r.bracket_hi
           << "]";
  o.require(r.unimodal, "unimodal pre-scan");
  o.require(r.f_star <= -0.0541, "f_star <= -0.0541");
  o.require(r.bracket_lo <= 0.0384235 && 0.0384235 <= r.bracket_hi, "0.0384235 inside the golden-section bracket");
  o.require(r.final_lo <= r.c_star && r.c_star <= r.final_hi, "c_star inside the final bracket");
  return o;
}

Outcome ac3_theorem() {
  Outcome o;
  const ThresholdReport t = threshold_report(100000);
  const BoundReport b = best_finite_bound(100000);
  o.require(t.crossing_n.has_value(), "threshold crossing found");
  if (t.crossing_n) {
    for (const auto& row : t.rows) {
      if (row.n >= *t.crossing_n && row.bits_per_n > 0.93) {
        o.require(false, "bits_per_n <= 0.93 at n=" + std::to_string(row.n));
      }
    }
  }
  o.require(b.bits_per_n <= 0.93, "best_finite_bound(1e5).bits_per_n <= 0.93");
  o.detail.precision(10);
  o.detail << "n0=" << (t.crossing_n ? std::to_string(*t.crossing_n) : "none") << " samples=" << t.rows.size()
           << " bits_per_n(1e5)=" << b.bits_per_n << " (m=" << b.params.m << ", " << to_string(b.variant) << ")";
  if (!t.monotonicity_violations.empty()) o.detail << " monotonicity flags=" << t.monotonicity_violations.size();
  return o;
}

Outcome ac4_oracles() {
  Outcome o;
  for (unsigned n = 1; n <= 24; ++n) {
    const auto b = count_bruteforce(n);
    const auto m = count_mitm(n);
    const auto s = count_signwalk(n);
    const bool same = b.count_le_one == m.count_le_one && b.count_le_one == s.count_le_one &&
                      b.count_eq_one == m.count_eq_one && b.count_eq_one == s.count_eq_one;
    o.require(same, "methods disagree at n=" + std::to_string(n));
  }
  o.detail << "n=1..24 brute == mitm == signwalk";
  return o;
}

Outcome ac5_bound_validity() {
  Outcome o;
  o.detail.precision(8);
  for (unsigned n = 19; n <= 24; ++n) {
    const double log2_exact = log2_of(count_signwalk(n).count_le_one) - n;
    const double log2_bound = best_finite_bound(n).log2_prob_bound;
    o.require(log2_exact <= log2_bound, "tail bound at n=" + std::to_string(n));
    if (n == 24) o.detail << "n=24 log2 P=" << log2_exact << " <= " << log2_bound << "; ";
  }
  const double log2_count = log2_of(count_mitm(40).count_le_one);
  const double log2_bound = best_finite_bound(40).log2_count_bound;
  o.require(log2_count <= log2_bound, "count bound at n=40");
  o.detail << "n=40 log2 count=" << log2_count << " <= " << log2_bound;
  return o;
}

Outcome ac6_lower_bound() {
  Outcome o;
  o.detail.precision(6);
  for (unsigned n = 1; n <= 52; ++n) {
    const BigInt count(kRegressionCounts[n - 1].count_le_one);
    o.require(count >= trivial_lower_bound(n), "count >= trivial lower bound at n=" + std::to_string(n));
  }
  for (unsigned n : {30U, 40U, 50U}) {
    const CensusResult r = count_mitm(n);
    o.require(r.count_le_one >= trivial_lower_bound(n), "lower bound at n=" + std::to_string(n));
    const double ratio = log2_of(r.count_le_one) / n;
    o.require(ratio >= 0.5, "log2(count)/n >= 0.5 at n=" + std::to_string(n));
    o.detail << "n=" << n << ":" << ratio << " ";
  }
  return o;
}

Outcome ac7_lemma_suite() {
  Outcome o;
  std::size_t checked = 0;
  for (unsigned n : {10U, 50U, 100U, 400U}) {
    const HarmonicTable h(n);
    for (unsigned m = 2; m <= std::min(n, 40U); ++m) {
      for (double x : {0.1, 1.0, 5.0, 20.0, 100.0}) {
        ++checked;
        if (!(cosh_product_log(n, x) <= lemma_product_log(n, m, x, h) + 1e-9)) {
          o.require(false, "lemma at n=" + std::to_string(n) + " m=" + std::to_string(m));
        }
      }
    }
  }
  std::size_t identities = 0;
  double worst = 0.0;
  for (unsigned n = kMinBoundN; n <= 200; ++n) {
    const HarmonicTable h(n);
    for (unsigned m = 2; m <= n; ++m) {
      if (!(h(n) - h(m) - 2.0 > 0.0)) continue;
      ++identities;
      const double a = tail_bound_log2(canonical_params(n, m, h), BoundVariant::Lemma, h).log2_prob_bound;
      const double b = optimized_bound_log2(n, m, h).log2_prob_bound;
      const double rel = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
      worst = std::max(worst, rel);
      if (!(rel <= 1e-12)) o.require(false, "identity at n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  o.detail << checked << " lemma points, " << identities << " identities, worst rel err " << worst;
  return o;
}

Outcome ac8_montecarlo() {
  Outcome o;
  o.detail.precision(6);
  const double exact = count_signwalk(12).count_le_one.convert_to<double>() / 4096.0;
  const McEstimate e = estimate_tail(12, harmonic_float(12) - 2.0, 1000000, 1);
  o.require(std::abs(e.p_hat - exact) <= 1.5 * e.ci_halfwidth, "n=12 estimate within 1.5 half-widths");
  o.detail << "n=12 p_hat=" << e.p_hat << " exact=" << exact << " hw=" << e.ci_halfwidth << "; ";

  const Moments mo = moment_check(50, 1000000, 1);
  const double var = inverse_squares_exact(50).to_double();
  o.require(std::abs(mo.variance - var) <= 0.01 * var, "variance within 1% at n=50");
  o.detail << "var(50)=" << mo.variance << " exact=" << var << "; ";

  // 1.6449340668482264 < pi^2/6, so this is the stronger exact comparison.
  const Rational pi2_over_6_lower(BigInt("16449340668482264"), BigInt("10000000000000000"));
  Rational partial(0);
  bool ok = true;
  for (unsigned n = 1; n <= 2000; ++n) {
    partial += Rational(1, static_cast<long long>(n) * n);
    ok = ok && partial <= pi2_over_6_lower;
  }
  o.require(ok, "exact sum 1/i^2 <= pi^2/6 for n <= 2000");
  o.detail << "sum 1/i^2 <= pi^2/6 for n <= 2000";
  return o;
}

Outcome ac9_regression() {
  Outcome o;
  for (const auto& r : kRegressionCounts) {
    const CensusResult c = count_mitm(r.n);
    o.require(c.count_le_one == BigInt(r.count_le_one) && c.count_eq_one == BigInt(r.count_eq_one),
              "regression mismatch at n=" + std::to_string(r.n));
  }
  o.detail << "pinned counts n=1..52 (count_eq_one(52)=" << kRegressionCounts.back().count_eq_one
           << "); asymptotic 2^{n-o(n)} question and sharp constant not reproducible at desk scale";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 constant reproduction", ac1_constants},
      {"AC2 optimizer", ac2_optimizer},
      {"AC3 theorem at desk scale", ac3_theorem},
      {"AC4 oracle equivalence", ac4_oracles},
      {"AC5 bound validity at finite n", ac5_bound_validity},
      {"AC6 lower bound", ac6_lower_bound},
      {"AC7 lemma property suite", ac7_lemma_suite},
      {"AC8 Monte Carlo statistical suite", ac8_montecarlo},
      {"AC9 census regression values", ac9_regression},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = check();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#pragma once

#include <cmath>
#include <utility>

namespace unitfrac {

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  // Final bracket; the minimizer of a unimodal function lies inside it.
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

// Golden-section search for the minimum of a unimodal f on [lo, hi].
// Stops once the bracket is narrower than tol.
template <typename F>
GoldenResult golden_section_minimize(F&& f, double lo, double hi, double tol, int max_iter = 500) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (hi < lo) std::swap(lo, hi);
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (hi - lo > tol && it < max_iter) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (lo + hi);
  return GoldenResult{x, f(x), lo, hi, it};
}

}  // namespace unitfrac

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace unitfrac {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr double kPiSquaredOverSix = 1.6449340668482264;

/// Exact fraction, always stored reduced with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(BigInt num, BigInt den = 1);  // NOLINT(google-explicit-constructor)
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Nearest-ish binary64 value; safe for numerators and denominators far
  /// beyond the double range.
  double to_double() const;
  std::string str() const;

 private:
  void reduce();

  BigInt num_;
  BigInt den_;
};

/// Integer numerator over the implicit denominator lcm(1..n).
class FixedPointSum {
 public:
  explicit FixedPointSum(unsigned n);

  /// Sum of 1/s over the subset encoded by `mask` (bit i-1 set <=> i in S).
  static FixedPointSum of_subset(unsigned n, std::uint64_t mask);

  unsigned n() const { return n_; }
  const BigInt& numerator() const { return numerator_; }
  const BigInt& denominator() const { return denominator_; }

  /// Adds 1/k; requires 1 <= k <= n.
  FixedPointSum& add_reciprocal(unsigned k);

  Rational to_rational() const { return Rational(numerator_, denominator_); }

 private:
  unsigned n_;
  BigInt denominator_;
  BigInt numerator_;
};

Rational harmonic_exact(unsigned n);
double harmonic_float(unsigned n);
BigInt lcm_upto(unsigned n);

/// Sum over m < i <= n of 1/i^2, exact.
Rational tail_inverse_squares(unsigned m, unsigned n);
/// Sum over i > m of 1/i^2, as pi^2/6 minus the exact partial sum.
double tail_inverse_squares_infinite(unsigned m);

/// Exact sum_{i=1}^n 1/i^2 (the variance of the sign walk).
Rational inverse_squares_exact(unsigned n);

/// Prefix table H_0..H_n of float harmonic numbers, built with compensated
/// summation so that every entry is accurate to a few ulps.
class HarmonicTable {
 public:
  explicit HarmonicTable(unsigned n);

  unsigned size() const { return static_cast<unsigned>(values_.size() - 1); }
  double operator()(unsigned k) const { return values_.at(k); }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// ln((1 + e^{-y}) / 2) for y >= 0.
double log_half_one_plus_exp_neg(double y);

/// ln cosh(y), stable for all finite y.
double log_cosh(double y);

}  // namespace unitfrac

#include "unitfrac/numerics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "unitfrac/errors.hpp"

namespace unitfrac {

namespace mp = boost::multiprecision;

namespace {

// l * i / gcd(l, i); the gcd is taken on l mod i, a single-word value.
void lcm_in_place(BigInt& l, unsigned i) {
  const auto r = static_cast<BigInt>(l % i).convert_to<unsigned>();
  const unsigned g = std::gcd(r, i);
  if (g != i) l *= i / g;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw DomainError("Rational: zero denominator");
  reduce();
}

void Rational::reduce() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = mp::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw DomainError("Rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  reduce();
  return *this;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Rational::to_double() const {
  if (num_ == 0) return 0.0;
  BigInt a = mp::abs(num_);
  // Scale so that the integer quotient carries ~64 significant bits.
  long shift = 64 - (static_cast<long>(mp::msb(a)) - static_cast<long>(mp::msb(den_)));
  BigInt q = shift >= 0 ? BigInt(a << shift) / den_ : a / BigInt(den_ << -shift);
  double v = std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
  return num_ < 0 ? -v : v;
}

std::string Rational::str() const { return num_.str() + "/" + den_.str(); }

FixedPointSum::FixedPointSum(unsigned n) : n_(n), denominator_(lcm_upto(n)), numerator_(0) {}

FixedPointSum FixedPointSum::of_subset(unsigned n, std::uint64_t mask) {
  FixedPointSum s(n);
  for (unsigned i = 1; i <= n && i <= 64; ++i) {
    if (mask >> (i - 1) & 1U) s.add_reciprocal(i);
  }
  return s;
}

FixedPointSum& FixedPointSum::add_reciprocal(unsigned k) {
  if (k == 0 || k > n_) throw DomainError("FixedPointSum: reciprocal 1/k needs 1 <= k <= n");
  numerator_ += denominator_ / k;
  return *this;
}

Rational harmonic_exact(unsigned n) {
  if (n == 0) throw DomainError("harmonic_exact: n must be >= 1");
  // Accumulate over lcm(1..n) so only one reduction happens at the end.
  BigInt l = lcm_upto(n);
  BigInt num = 0;
  for (unsigned i = 1; i <= n; ++i) num += l / i;
  return Rational(std::move(num), std::move(l));
}

double harmonic_float(unsigned n) {
  if (n == 0) throw DomainError("harmonic_float: n must be >= 1");
  double s = 0.0;
  for (unsigned i = n; i >= 1; --i) s += 1.0 / static_cast<double>(i);
  return s;
}

BigInt lcm_upto(unsigned n) {
  if (n == 0) throw DomainError("lcm_upto: n must be >= 1");
  BigInt l = 1;
  for (unsigned i = 2; i <= n; ++i) lcm_in_place(l, i);
  return l;
}

namespace {

Rational inverse_squares_range(unsigned lo, unsigned hi) {
  // Sum_{lo <= i <= hi} 1/i^2 over a common denominator (lcm(lo..hi))^2.
  BigInt l = 1;
  for (unsigned i = lo; i <= hi; ++i) lcm_in_place(l, i);
  BigInt den = l * l;
  BigInt num = 0;
  for (unsigned i = lo; i <= hi; ++i) {
    BigInt q = l / i;
    num += q * q;
  }
  return Rational(std::move(num), std::move(den));
}

}  // namespace

Rational tail_inverse_squares(unsigned m, unsigned n) {
  if (m < 2 || m > n) throw DomainError("tail_inverse_squares: need 2 <= m <= n");
  if (m == n) return Rational(0);
  return inverse_squares_range(m + 1, n);
}

double tail_inverse_squares_infinite(unsigned m) {
  if (m < 2) throw DomainError("tail_inverse_squares: need m >= 2");
  return kPiSquaredOverSix - inverse_squares_exact(m).to_double();
}

Rational inverse_squares_exact(unsigned n) {
  if (n == 0) throw DomainError("inverse_squares_exact: n must be >= 1");
  return inverse_squares_range(1, n);
}

HarmonicTable::HarmonicTable(unsigned n) : values_(static_cast<std::size_t>(n) + 1, 0.0) {
  double sum = 0.0;
  double comp = 0.0;
  for (unsigned i = 1; i <= n; ++i) {
    const double term = 1.0 / static_cast<double>(i);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    values_[i] = sum + comp;
  }
}

double log_half_one_plus_exp_neg(double y) { return std::log1p(std::exp(-y)) - std::numbers::ln2; }

double log_cosh(double y) {
  y = std::abs(y);
  if (y > 20.0) return y + log_half_one_plus_exp_neg(2.0 * y);
  // cosh y - 1 = 2 sinh^2(y/2), exact near zero.
  const double s = std::sinh(0.5 * y);
  return std::log1p(2.0 * s * s);
}

}  // namespace unitfrac

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "stablecut/errors.hpp"

namespace stablecut {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact conversion: every finite double is m * 2^e with integer m, so the
// rational image is exact (no decimal round-tripping involved).
inline Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw instance_error("non-finite value has no rational form");
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m * 2^e with |m| in [0.5, 1)
  const auto mi = static_cast<std::int64_t>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mi);
  const BigInt p = BigInt(1) << (e >= 0 ? e : -e);
  if (e >= 0)
    r *= Rational(p);
  else
    r /= Rational(p);
  return r;
}

// An exact element of [0, +inf], stored as a ratio of nonnegative rationals.
// Conventions pinned by the stability-margin definition: 0/0 is 0 and x/0 is
// +inf for x > 0.
class ExtRatio {
 public:
  ExtRatio() : num_(0), den_(1) {}
  ExtRatio(Rational num, Rational den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_ < 0 || den_ < 0) throw internal_error("ExtRatio parts must be nonnegative");
    if (den_ == 0) {
      if (num_ == 0)
        den_ = 1;  // 0/0 == 0
      else
        num_ = 1;  // normalize +inf to 1/0
    }
  }
  static ExtRatio infinity() { return ExtRatio(Rational(1), Rational(0)); }

  bool is_infinite() const { return den_ == 0; }
  bool is_zero() const { return !is_infinite() && num_ == 0; }
  const Rational& num() const { return num_; }
  const Rational& den() const { return den_; }

  double to_double() const {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return (num_ / den_).convert_to<double>();
  }

  // Strict comparison against an exact rational threshold: *this > g.
  bool greater_than(const Rational& g) const {
    if (is_infinite()) return true;
    return num_ > g * den_;
  }

  friend bool operator<(const ExtRatio& a, const ExtRatio& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator==(const ExtRatio& a, const ExtRatio& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator<=(const ExtRatio& a, const ExtRatio& b) { return a < b || a == b; }

 private:
  Rational num_, den_;
};

}  // namespace stablecut

#pragma once

// sin, cos and tan of rational multiples of pi, in the working precision of
// the construction kernels. Every trigonometric constant the constructions
// need has the form p*pi/q with small integers p, q, so the argument is kept
// exact until the final multiplication by pi.

#include <cmath>
#include <numbers>

#include "nodal/double_double.hpp"

namespace nodal {

template <class Real>
struct RationalTrig;

template <>
struct RationalTrig<double> {
  static double sin_pi(long num, long den) {
    return std::sin(std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
  }
  static double cos_pi(long num, long den) {
    return std::cos(std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
  }
  static double tan_pi(long num, long den) {
    return std::tan(std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
  }
  static double sqrt(double v) { return std::sqrt(v); }
};

template <>
struct RationalTrig<DoubleDouble> {
  static DoubleDouble sin_pi(long num, long den) { return reduce(num, den, false); }
  static DoubleDouble cos_pi(long num, long den) { return reduce(num, den, true); }
  static DoubleDouble tan_pi(long num, long den) { return sin_pi(num, den) / cos_pi(num, den); }
  static DoubleDouble sqrt(const DoubleDouble& v) { return nodal::sqrt(v); }

 private:
  // Taylor series, valid for |x| <= pi/4.
  static DoubleDouble sin_series(const DoubleDouble& x) {
    DoubleDouble x2 = x * x;
    DoubleDouble term = x;
    DoubleDouble sum = x;
    for (int k = 1; k < 20; ++k) {
      term = term * x2 / DoubleDouble(static_cast<double>((2 * k) * (2 * k + 1)));
      if (k % 2) sum -= term; else sum += term;
    }
    return sum;
  }
  static DoubleDouble cos_series(const DoubleDouble& x) {
    DoubleDouble x2 = x * x;
    DoubleDouble term = 1.0;
    DoubleDouble sum = 1.0;
    for (int k = 1; k < 20; ++k) {
      term = term * x2 / DoubleDouble(static_cast<double>((2 * k - 1) * (2 * k)));
      if (k % 2) sum -= term; else sum += term;
    }
    return sum;
  }

  // Evaluates sin(pi*num/den) (or cos) after exact reduction of num/den to [0, 1/4].
  static DoubleDouble reduce(long num, long den, bool cosine) {
    if (den < 0) { num = -num; den = -den; }
    double sign = 1.0;
    if (cosine) {
      // cos(pi r) = sin(pi (1/2 - r))
      num = den - 2 * num;
      den = 2 * den;
    }
    // r in [0, 2)
    long period = 2 * den;
    num %= period;
    if (num < 0) num += period;
    if (num >= den) { num -= den; sign = -sign; }    // sin(pi(r+1)) = -sin(pi r)
    if (2 * num > den) num = den - num;              // sin(pi(1-r)) = sin(pi r)
    // r in [0, 1/2]
    if (4 * num > den) {
      // sin(pi r) = cos(pi (1/2 - r)), 1/2 - r in [0, 1/4)
      DoubleDouble arg = kPiDD * DoubleDouble(static_cast<double>(den - 2 * num)) /
                         DoubleDouble(static_cast<double>(2 * den));
      return DoubleDouble(sign) * cos_series(arg);
    }
    DoubleDouble arg = kPiDD * DoubleDouble(static_cast<double>(num)) /
                       DoubleDouble(static_cast<double>(den));
    return DoubleDouble(sign) * sin_series(arg);
  }
};

}  // namespace nodal

#pragma once

#include <cstdint>

namespace rotlab {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // always > 0

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Best rational approximation of x with denominator <= max_den, by
/// continued fractions (last convergent or semiconvergent within bound).
Rational best_rational(double x, std::int64_t max_den);

/// floor(r * n) with a breakpoint guard: when r*n lies within 1e-12 of an
/// integer and r is (to double precision) a rational p/q with q <= 1e6,
/// the floor is decided exactly as floor(p*n/q).
std::int64_t guarded_floor_product(double r, std::int64_t n);

/// floor(x), except values within `snap` of an integer are rounded to it.
std::int64_t snapped_floor(double x, double snap);

/// Representative of x mod 1 in [0, 1).
double mod1(double x);

/// Distance from x to the nearest integer, i.e. the metric on R/Z.
double circle_distance(double x, double y);

}  // namespace rotlab

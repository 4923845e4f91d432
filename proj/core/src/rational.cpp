#include "rotlab/rational.hpp"

#include <cmath>
#include <limits>

#include "rotlab/error.hpp"

namespace rotlab {

namespace {

__extension__ typedef __int128 Int128;

constexpr double kBreakpointTol = 1e-12;
constexpr std::int64_t kGuardDenominator = 1'000'000;

std::int64_t floor_div(Int128 a, Int128 b) {
  Int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  if (q > std::numeric_limits<std::int64_t>::max() ||
      q < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("floor_div: quotient exceeds int64");
  }
  return static_cast<std::int64_t>(q);
}

}  // namespace

Rational best_rational(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw InvalidArgument("best_rational: non-finite input");
  if (max_den < 1) throw InvalidArgument("best_rational: max_den must be >= 1");
  if (std::abs(x) > 1e15) throw OverflowError("best_rational: |x| too large");

  // Convergents h/k; (h1, k1) is the latest, (h0, k0) the one before.
  std::int64_t h0 = 0, h1 = 1;
  std::int64_t k0 = 1, k1 = 0;
  double y = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(y);
    if (k1 > 0 && a_d * static_cast<double>(k1) + static_cast<double>(k0) >
                      static_cast<double>(max_den)) {
      const std::int64_t t = (max_den - k0) / k1;
      const Rational conv{h1, k1};
      if (t <= 0) return conv;
      const Rational semi{t * h1 + h0, t * k1 + k0};
      return std::abs(semi.value() - x) < std::abs(conv.value() - x) ? semi : conv;
    }
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = y - a_d;
    if (frac <= 0.0 || static_cast<double>(h1) / static_cast<double>(k1) == x) break;
    y = 1.0 / frac;
  }
  return Rational{h1, k1};
}

std::int64_t guarded_floor_product(double r, std::int64_t n) {
  if (!std::isfinite(r)) throw InvalidArgument("floor of non-finite real");
  const double x = r * static_cast<double>(n);
  if (!std::isfinite(x) || std::abs(x) > 9e18) {
    throw OverflowError("r*n exceeds int64 range");
  }
  const double nearest = std::nearbyint(x);
  if (std::abs(x - nearest) >= kBreakpointTol * std::max(1.0, std::abs(x))) {
    return static_cast<std::int64_t>(std::floor(x));
  }
  const Rational q = best_rational(r, kGuardDenominator);
  // Only trust the rational if it reproduces r to the precision of a double.
  if (std::abs(q.value() - r) > 4.0 * std::numeric_limits<double>::epsilon() *
                                    std::max(1.0, std::abs(r))) {
    return static_cast<std::int64_t>(nearest);
  }
  return floor_div(static_cast<Int128>(q.num) * n, q.den);
}

std::int64_t snapped_floor(double x, double snap) {
  if (!std::isfinite(x)) throw InvalidArgument("floor of non-finite real");
  const double nearest = std::nearbyint(x);
  if (std::abs(x - nearest) <= snap) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::floor(x));
}

double mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double circle_distance(double x, double y) {
  const double d = mod1(x - y);
  return std::min(d, 1.0 - d);
}

}  // namespace rotlab

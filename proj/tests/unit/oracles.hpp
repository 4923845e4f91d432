#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library code they are used to check.

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

namespace oracle {

__extension__ typedef __int128 Int128;

inline std::int64_t floor_div(Int128 a, Int128 b) {
  Int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}

/// floor(r * n) for the exact binary value of r, in 128-bit integers.
inline std::int64_t exact_floor(double r, std::int64_t n) {
  int e = 0;
  const double m = std::frexp(r, &e);                 // r = m 2^e, |m| in [0.5, 1)
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));  // r = mant 2^(e - 53)
  const int shift = 53 - e;
  const Int128 prod = static_cast<Int128>(mant) * n;
  if (shift <= 0) return static_cast<std::int64_t>(prod * (static_cast<Int128>(1) << -shift));
  if (shift >= 120) return prod >= 0 ? 0 : -1;
  return floor_div(prod, static_cast<Int128>(1) << shift);
}

/// floor(p n / q) for q > 0.
inline std::int64_t rational_floor(std::int64_t p, std::int64_t q, std::int64_t n) {
  return floor_div(static_cast<Int128>(p) * n, q);
}

/// Polar factors g = U P from an SVD g = W S V^T: U = W V^T, P = V S V^T.
struct Polar {
  Eigen::MatrixXd U;
  Eigen::MatrixXd P;
};

inline Polar svd_polar(const Eigen::MatrixXd& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd& W = svd.matrixU();
  const Eigen::MatrixXd& V = svd.matrixV();
  return {W * V.transpose(), V * svd.singularValues().asDiagonal() * V.transpose()};
}

/// F^n(0) / n for the Arnold lift, iterated in extended precision.
inline double arnold_translation(double omega, double K, long steps) {
  long double x = 0.0L;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (long i = 0; i < steps; ++i) x = x + omega + (K / two_pi) * std::sin(two_pi * x);
  return static_cast<double>(x / steps);
}

/// Rotation number in [0, 1) of a 2 x 2 matrix of determinant 1 in the
/// convention where [[cos t, -sin t], [sin t, cos t]] has rotation number t / 2 pi.
inline double rotation_number_2x2(const Eigen::MatrixXd& g) {
  const double tr = g.trace();
  if (tr >= 2.0) return 0.0;
  if (tr <= -2.0) return 0.5;
  const double theta = std::acos(tr / 2.0);  // in (0, pi)
  const double turn = theta / (2.0 * std::numbers::pi);
  // The image of e_1 turns counterclockwise iff g(1, 0) > 0.
  return g(1, 0) > 0.0 ? turn : 1.0 - turn;
}

}  // namespace oracle

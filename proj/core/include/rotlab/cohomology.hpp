#pragma once

// Cochain calculus on the group Z with integer coefficients: coboundaries,
// cocycle checks, quasi-morphism defects and homogenization, the floor
// cocycles c_r, and the map H^2_b(Z;Z) -> R/Z.
//
// Conventions (group written additively):
//   (df)(n, m)      = f(m) - f(n + m) + f(n)
//   (dc)(a, b, d)   = c(b, d) - c(a + b, d) + c(a, b + d) - c(a, b)
//   c_r(n, m)       = floor(rn) + floor(rm) - floor(r(n + m)) = (d beta_r)(n, m)
// A class is identified with r in [0, 1) when it equals -[d beta_r].

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace rotlab::cohomology {

using Integer = std::int64_t;

inline constexpr Integer kDefaultCocycleWindow = 64;
inline constexpr Integer kDefaultDefectWindow = 256;
inline constexpr Integer kDefaultExtractionN = 10'000;

/// A map Z -> Z, evaluated lazily.
struct IntegerCochain1 {
  std::function<Integer(Integer)> eval;
  Integer window_hint = kDefaultDefectWindow;
  /// Set when the cochain is beta_r(n) = floor(r n).
  std::optional<double> floor_slope;
  /// Set when the cochain is the homomorphism n -> a n.
  std::optional<Integer> linear_slope;

  Integer operator()(Integer n) const { return eval(n); }
};

/// A map Z x Z -> Z, evaluated lazily.
struct IntegerCochain2 {
  std::function<Integer(Integer, Integer)> eval;
  Integer window_hint = kDefaultCocycleWindow;

  Integer operator()(Integer n, Integer m) const { return eval(n, m); }
};

struct DefectEstimate {
  double value = 0.0;
  Integer window = 0;
  bool exact = false;
};

/// A real number together with a bound on its distance to the quantity it estimates.
struct Estimate {
  double value = 0.0;
  double error_radius = 0.0;
};

/// Element of R/Z, represented in [0, 1).
struct ClassValue {
  double value = 0.0;
  double error_radius = 0.0;
};

/// Builds a ClassValue from any real representative.
ClassValue make_class(double representative, double error_radius);

// ---- constructors ---------------------------------------------------------

IntegerCochain1 floor_cochain(double r);
IntegerCochain1 linear_cochain(Integer slope);
IntegerCochain1 make_cochain1(std::function<Integer(Integer)> eval,
                              Integer window_hint = kDefaultDefectWindow);

IntegerCochain2 make_cochain2(std::function<Integer(Integer, Integer)> eval,
                              Integer window_hint = kDefaultCocycleWindow);
/// The floor cocycle c_r as a cochain.
IntegerCochain2 floor_cocycle_cochain(double r);
/// df as a 2-cochain.
IntegerCochain2 coboundary_cochain(const IntegerCochain1& f);
IntegerCochain2 negated(const IntegerCochain2& c);
IntegerCochain2 sum(const IntegerCochain2& a, const IntegerCochain2& b);

/// Evaluates f once on [-radius, radius] and serves later lookups from the
/// table; arguments outside the range fall through to f.
IntegerCochain1 tabulated(const IntegerCochain1& f, Integer radius);
IntegerCochain2 tabulated(const IntegerCochain2& c, Integer radius);

// ---- operations -----------------------------------------------------------

/// f(m) - f(n + m) + f(n); throws OverflowError instead of wrapping.
Integer coboundary1(const IntegerCochain1& f, Integer n, Integer m);

/// c(b, d) - c(a + b, d) + c(a, b + d) - c(a, b).
Integer coboundary2(const IntegerCochain2& c, Integer a, Integer b, Integer d);

struct CocycleViolation {
  Integer a = 0, b = 0, d = 0;
  Integer value = 0;
};

/// First triple in [-window, window]^3 where dc != 0, if any.
std::optional<CocycleViolation> find_cocycle_violation(const IntegerCochain2& c,
                                                       Integer window);

bool cocycle_check2(const IntegerCochain2& c, Integer window = kDefaultCocycleWindow);

/// max |df(n, m)| over (n, m) in [-window, window]^2.
DefectEstimate defect(const IntegerCochain1& f, Integer window = kDefaultDefectWindow);

/// f(k_max) / k_max with radius D / k_max. When `defect_bound` is absent, D
/// comes from the closed form (floor or linear cochains) or from a scan on
/// the window min(k_max, 1024).
Estimate homogenize(const IntegerCochain1& f, Integer k_max,
                    std::optional<double> defect_bound = std::nullopt);

/// c_r(n, m); always -1 or 0.
Integer floor_cocycle(double r, Integer n, Integer m);

/// The primitive of a 2-cocycle on Z pinned by f(1) = 0 and f(0) = c(0, 0),
/// tabulated on [-extent, extent]. Satisfies df = c whenever c is a cocycle.
IntegerCochain1 primitive(const IntegerCochain2& c, Integer extent);

struct ExtractOptions {
  Integer cocycle_window = kDefaultCocycleWindow;
  Integer defect_window = kDefaultDefectWindow;
};

/// The r in [0, 1) with [c] = -[d beta_r]. Throws InvalidArgument when c
/// fails the cocycle check and NumericalError when the radius reaches 1/2.
ClassValue extract_class(const IntegerCochain2& c, Integer N = kDefaultExtractionN,
                         const ExtractOptions& options = {});

}  // namespace rotlab::cohomology

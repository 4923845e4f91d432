#pragma once

// Lifts of orientation-preserving circle homeomorphisms to R (maps F with
// F(x + 1) = F(x) + 1), Poincare translation and rotation numbers, the
// canonical section F(0) in [0, 1), and the integer Euler cocycle it defines.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rotlab/cohomology.hpp"

namespace rotlab::circle {

using cohomology::ClassValue;
using cohomology::Estimate;
using cohomology::Integer;

inline constexpr std::size_t kDefaultBreakpointBudget = 100'000;
/// Tolerance for snapping s(g)(0) onto an integer in the canonical section.
inline constexpr double kSectionSnap = 1e-12;

struct Rigid {
  double alpha = 0.0;
};

/// x + omega + (K / 2 pi) sin(2 pi x), 0 <= K < 1.
struct Arnold {
  double omega = 0.0;
  double K = 0.0;
};

/// Breakpoints (x, F(x)) with x strictly increasing in [0, 1), extended by
/// F(x + 1) = F(x) + 1 and linear interpolation in between.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> points;
};

/// The inverse of a piecewise-linear lift, again piecewise linear.
PiecewiseLinear invert(const PiecewiseLinear& pl);

class CircleLift {
 public:
  using Kind = std::variant<Rigid, Arnold, PiecewiseLinear>;

  static CircleLift rigid(double alpha);
  static CircleLift arnold(double omega, double K);
  /// Validates monotonicity and periodic consistency; throws InvalidArgument.
  static CircleLift piecewise_linear(std::vector<std::pair<double, double>> points);
  static CircleLift identity() { return rigid(0.0); }

  double operator()(double x) const;
  double inverse(double y) const;

  const Kind& kind() const { return kind_; }
  bool is_rigid() const { return std::holds_alternative<Rigid>(kind_); }

 private:
  explicit CircleLift(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
  std::shared_ptr<const PiecewiseLinear> pl_inverse_;  // set for piecewise-linear lifts
};

/// An element of the universal cover: a composition of lifts (applied last
/// to first) followed by the deck translation x -> x + deck_offset.
class CircleCoverElement {
 public:
  struct Factor {
    CircleLift lift;
    bool inverted = false;
  };

  CircleCoverElement() = default;  // identity
  CircleCoverElement(CircleLift lift, Integer deck_offset = 0);  // NOLINT(implicit)

  double operator()(double x) const;
  double inverse_eval(double y) const;

  /// F^k(x) for any integer k; rigid elements use x + k * alpha directly.
  double power_eval(Integer k, double x) const;

  CircleCoverElement inverse() const;
  CircleCoverElement shifted(Integer m) const;

  Integer deck_offset() const { return deck_offset_; }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Total translation when the element is a pure rotation (deck included).
  std::optional<double> rigid_angle() const;

 private:
  friend CircleCoverElement compose(const CircleCoverElement&, const CircleCoverElement&,
                                    std::size_t);
  std::vector<Factor> factors_;  // factors_[0] is applied last
  Integer deck_offset_ = 0;
};

/// (f o g)(x) = f(g(x)). Rigid factors fold; piecewise-linear factors are
/// materialized into one lift, throwing NumericalError past the budget.
CircleCoverElement compose(const CircleCoverElement& f, const CircleCoverElement& g,
                           std::size_t breakpoint_budget = kDefaultBreakpointBudget);

/// F^n(0) / n with radius 1 / n.
Estimate translation_number_circle(const CircleCoverElement& f, Integer n_iter);

/// The lift of the same circle map with F(0) in [0, 1), up to kSectionSnap.
CircleCoverElement canonical_section_circle(const CircleCoverElement& g);

/// The integer m with s(g) o s(h) = s(gh) + m for the canonical section;
/// always 0 or 1. Throws NumericalError if the raw value is 0.1 from an integer.
Integer euler_cocycle_circle(const CircleCoverElement& g, const CircleCoverElement& h);

struct GhysOptions {
  Integer window = cohomology::kDefaultCocycleWindow;
  Integer N = cohomology::kDefaultExtractionN;
  Integer n_iter = 100'000;
  Integer defect_window = cohomology::kDefaultDefectWindow;
};

struct GhysReport {
  ClassValue cls;   // class of phi_g^* e_b under H^2_b(Z;Z) = R/Z
  ClassValue rho;   // Poincare rotation number
  double difference_mod1 = 0.0;
  Integer chi_max_abs = 0;
  Integer chi_min = 0;
  Integer chi_max = 0;
  /// Rigid rotations only: window entries where phi_g^* chi != -c_alpha.
  std::optional<Integer> rigid_mismatches;
};

/// The pulled-back Euler cocycle (k, l) -> chi(g^k, g^l) as a 2-cochain,
/// evaluated as floor(x_{k+l}) - floor(x_k) - floor(x_l) with x_m = F^m(0).
/// The orbit is precomputed for |m| <= max(4 window, extent + 2).
cohomology::IntegerCochain2 pulled_back_euler_cocycle(const CircleCoverElement& g, Integer window,
                                                      Integer extent);

GhysReport ghys_check(const CircleCoverElement& g, const GhysOptions& options = {});

/// Parses `rigid:<alpha>`, `arnold:<omega>:<K>` or `pl:<path>` (CSV lines `x,Fx`).
CircleLift parse_lift_spec(const std::string& spec);
CircleLift read_breakpoint_file(const std::string& path);

}  // namespace rotlab::circle

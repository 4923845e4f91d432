#pragma once

// The universal cover of Sp(2n; R), modelled by paths from the identity.
//
// The winding value eta of a cover element is the continuous lift of
// (1 / 2 pi) arg det(X + iY) along the path, where [X; Y] is a frame of the
// Lagrangian g_t L0 (L0 = the q-plane). On U(n) it equals the det_C winding
// of the unitary part; a full loop in U(1) shifts it by exactly 1.
// Frames are carried orthonormalized, so powers of hyperbolic elements stay
// well conditioned.

#include <cstddef>
#include <memory>
#include <vector>

#include "rotlab/cohomology.hpp"
#include "rotlab/linalg.hpp"
#include "rotlab/symplectic.hpp"

namespace rotlab::sp {

using cohomology::Integer;

inline constexpr std::size_t kSampleBudget = 1'000'000;
inline constexpr int kDefaultPathSamples = 16;

/// t -> U(t) P(t) with U(t) = Q diag(e^{i t phi}) Q^* (complex form) and
/// P(t) = V diag(e^{t mu}) V^T, for t in [0, 1]. Optionally inverted
/// pointwise, which traces the inverse element.
class GeodesicPath {
 public:
  GeodesicPath(CMatrix unitary_basis, linalg::Vector phases, Matrix spd_basis,
               linalg::Vector log_stretch, Matrix endpoint);

  /// Unitary-then-stretch path of g = U P.
  static GeodesicPath polar(const SymplecticMatrix& g);
  /// Only the unitary leg (resp. only the stretch leg) of polar(g).
  static GeodesicPath unitary_leg(const SymplecticMatrix& g);
  static GeodesicPath stretch_leg(const SymplecticMatrix& g);
  /// t -> R(2 pi t) in the first (q_1, p_1) plane: a full loop at the identity.
  static GeodesicPath full_loop(int n);

  int half_dim() const { return static_cast<int>(endpoint_.rows() / 2); }
  Matrix at(double t) const;
  const Matrix& endpoint() const { return endpoint_; }
  GeodesicPath inverse() const;

 private:
  CMatrix unitary_basis_;
  linalg::Vector phases_;
  Matrix spd_basis_;
  linalg::Vector log_stretch_;
  Matrix endpoint_;
  bool inverted_ = false;
};

/// One leg of a cover-element path: t -> path(t) * right, sampled at knots.
struct PathSegment {
  std::shared_ptr<const GeodesicPath> path;
  Matrix right;
  std::vector<double> knots;
  std::vector<Matrix> knot_values;  // path(knot) * right

  Matrix at(double t) const { return path->at(t) * right; }
};

class CoverElement {
 public:
  /// The identity of the cover of Sp(2n).
  static CoverElement identity(int n);
  /// The primitive element traced by `path`, sampled at `samples` uniform
  /// knots and refined until consecutive phases differ by less than pi/4.
  static CoverElement from_path(std::shared_ptr<const GeodesicPath> path,
                                int samples = kDefaultPathSamples);

  int half_dim() const { return n_; }
  const Matrix& endpoint() const { return endpoint_; }
  /// Orthonormal frame of endpoint * L0.
  const Matrix& frame() const { return frame_; }
  /// Unwrapped winding along the path, without the deck offset.
  double theta() const { return theta_; }
  Integer deck_offset() const { return deck_; }
  /// theta + deck offset: the connection cochain eta.
  double value() const { return theta_ + static_cast<double>(deck_); }

  CoverElement shifted(Integer m) const;

  const std::vector<PathSegment>& segments() const { return segments_; }
  /// The sample matrices g_0 = I, ..., g_L = endpoint along the path.
  std::vector<Matrix> samples() const;

 private:
  friend CoverElement cover_multiply(const CoverElement&, const CoverElement&);
  friend CoverElement cover_inverse(const CoverElement&);

  int n_ = 0;
  std::vector<PathSegment> segments_;
  Matrix endpoint_;
  Matrix frame_;
  double theta_ = 0.0;
  Integer deck_ = 0;
};

enum class PathOrder { UnitaryThenStretch, StretchThenUnitary };

/// A lift of g: the polar path U(t) P^t (or P^t followed by U(t) P), deck 0.
CoverElement canonical_path(const SymplecticMatrix& g, int samples = kDefaultPathSamples,
                            PathOrder order = PathOrder::UnitaryThenStretch);

/// The deck generator i(1): the full loop R(2 pi t) in the first plane.
CoverElement deck_generator(int n);

/// a * b: the path of b followed by the path of a right-translated by the
/// endpoint of b (homotopic to a's path followed by endpoint(a) * b's path).
CoverElement cover_multiply(const CoverElement& a, const CoverElement& b);

CoverElement cover_inverse(const CoverElement& a);

/// a^k with materialized paths (k may be negative).
CoverElement cover_power(const CoverElement& a, Integer k);

struct Winding {
  double turns = 0.0;  // change of eta along the path, in units of 2 pi
  Matrix frame_end;    // orthonormalized image frame
  std::size_t samples_used = 0;
};

/// Change of (1 / 2 pi) arg det(X + iY) along t -> g_t F for the path of
/// `a`, adaptively refined; throws NumericalError past kSampleBudget.
Winding wind(const CoverElement& a, const Matrix& frame);

/// (1 / 2 pi) times the unwrapped det_C winding of the polar unitary part
/// along the sample matrices of `a` (the alternative connection cochain).
double polar_theta(const CoverElement& a);

/// eta(a^m), computed incrementally for m of either sign. Lazily extended;
/// one instance must not be shared between threads.
class PowerSequence {
 public:
  explicit PowerSequence(const CoverElement& a);

  double eta(Integer m);
  /// eta(a^m) without the deck contribution m * deck_offset.
  double path_theta(Integer m);
  Integer deck_offset() const { return deck_; }
  void reserve(Integer max_abs_power);

 private:
  void extend(std::vector<double>& values, Matrix& frame, const CoverElement& step,
              Integer count);

  CoverElement a_;
  CoverElement a_inv_;
  std::vector<double> positive_;  // eta(a^m), m >= 0
  std::vector<double> negative_;  // eta(a^{-m}), m >= 0
  Matrix frame_pos_;
  Matrix frame_neg_;
  Integer deck_ = 0;
};

/// Homogenization of a sequence s_j = eta(b^j), j = 0..2K.
struct TranslationEstimate {
  double value = 0.0;
  double error_radius = 0.0;
  double plain = 0.0;      // s_K / K
  double two_point = 0.0;  // (s_2K - s_K) / K
  double weighted = 0.0;   // weighted Birkhoff average of increments
  double defect = 0.0;     // max |s_{i+j} - s_i - s_j| over the sequence
  Integer depth = 0;       // K
};

TranslationEstimate homogenize_sequence(const std::vector<double>& s);

/// Symplectic translation number of a, from eta(a^j), j <= 2 k_max.
TranslationEstimate translation_number_sp(const CoverElement& a, Integer k_max);
/// Same, reusing an existing power sequence of the base element; estimates
/// the translation number of b^stride from eta(b^{stride j}), j <= 2 depth.
TranslationEstimate translation_number_sp(PowerSequence& powers, Integer stride, Integer depth);

}  // namespace rotlab::sp

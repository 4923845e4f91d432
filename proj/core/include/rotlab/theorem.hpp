#pragma once

// Rotation number, canonical section and integer Euler cocycle on Sp(2n; R),
// and the comparison of the pulled-back bounded Euler class with the rotation
// number for the cyclic subgroup generated by g.

#include <vector>

#include "rotlab/cohomology.hpp"
#include "rotlab/cover.hpp"
#include "rotlab/symplectic.hpp"

namespace rotlab::sp {

inline constexpr Integer kDefaultKMax = 64;
/// Translation numbers closer than this to an integer are floored to it.
inline constexpr double kFloorSnap = 1e-9;
inline constexpr double kSigmaResidualTol = 0.1;

/// tau of the canonical polar lift, reduced mod 1.
ClassValue rotation_number_sp(const SymplecticMatrix& g, Integer k_max = kDefaultKMax);

struct Section {
  CoverElement lift;
  TranslationEstimate tau;  // of `lift`, so tau.value is in [0, 1) up to the snap
  /// tau lies within its error radius of an integer, where the section jumps.
  bool near_boundary = false;
};

/// The lift of g with translation number in [0, 1).
Section canonical_section_sp(const SymplecticMatrix& g, Integer k_max = kDefaultKMax);

struct SigmaValue {
  Integer value = 0;
  double residual = 0.0;
};

/// sigma(g, h) = -floor(tau(s(g) s(h))). Throws NumericalError when
/// tau(s(g) s(h)) - tau(s(gh)) is more than kSigmaResidualTol from -value.
SigmaValue sigma_sp(const SymplecticMatrix& g, const SymplecticMatrix& h,
                    Integer k_max = kDefaultKMax);

struct TheoremOptions {
  Integer window = cohomology::kDefaultCocycleWindow;
  Integer N = cohomology::kDefaultExtractionN;
  Integer k_max = kDefaultKMax;
  Integer defect_window = cohomology::kDefaultDefectWindow;
};

struct TheoremReport {
  ClassValue cls;  // class of the pulled-back -sigma
  ClassValue rho;  // rotation_number_sp(g)
  double difference_mod1 = 0.0;
  double r_hat = 0.0;  // tau(s(g))
  double r_hat_error = 0.0;
  /// (k, l) -> sigma(g^k, g^l) for k, l in [-window, window], row-major in k.
  std::vector<Integer> sigma_table;
  Integer window = 0;
  Integer sigma_max_abs = 0;
  bool cocycle_ok = false;
  /// Table entries differing from c_{r_hat} explained by r_hat uncertainty.
  Integer flagged = 0;
  Integer unexplained = 0;
  double defect = 0.0;  // measured defect of eta along powers of s(g)
  bool bounded = false;  // sigma_max_abs <= ceil(defect) + 1
  bool section_near_boundary = false;

  Integer sigma(Integer k, Integer l) const {
    const Integer side = 2 * window + 1;
    return sigma_table[static_cast<std::size_t>((k + window) * side + (l + window))];
  }
};

TheoremReport main_theorem_check(const SymplecticMatrix& g, const TheoremOptions& options = {});

}  // namespace rotlab::sp

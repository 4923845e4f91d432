#include "rotlab/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "rotlab/error.hpp"
#include "rotlab/rational.hpp"

namespace rotlab::sp {

namespace {

TranslationEstimate shifted_estimate(TranslationEstimate est, Integer m) {
  const double d = static_cast<double>(m);
  est.value += d;
  est.plain += d;
  est.two_point += d;
  est.weighted += d;
  return est;
}

double distance_to_integer(double x) { return std::abs(x - std::nearbyint(x)); }

}  // namespace

ClassValue rotation_number_sp(const SymplecticMatrix& g, Integer k_max) {
  const auto est = translation_number_sp(canonical_path(g), k_max);
  return cohomology::make_class(est.value, est.error_radius);
}

Section canonical_section_sp(const SymplecticMatrix& g, Integer k_max) {
  const CoverElement path = canonical_path(g);
  const TranslationEstimate tau = translation_number_sp(path, k_max);
  const Integer shift = -snapped_floor(tau.value, kFloorSnap);
  Section s{path.shifted(shift), shifted_estimate(tau, shift), false};
  s.near_boundary = distance_to_integer(tau.value) <= std::max(tau.error_radius, kFloorSnap);
  return s;
}

SigmaValue sigma_sp(const SymplecticMatrix& g, const SymplecticMatrix& h, Integer k_max) {
  if (g.half_dim() != h.half_dim()) throw InvalidArgument("sigma_sp: dimension mismatch");
  const Section sg = canonical_section_sp(g, k_max);
  const Section sh = canonical_section_sp(h, k_max);
  const Section sgh = canonical_section_sp(g * h, k_max);
  const double t = translation_number_sp(cover_multiply(sg.lift, sh.lift), k_max).value;
  SigmaValue out;
  out.value = -snapped_floor(t, kFloorSnap);
  out.residual = std::abs(t - sgh.tau.value + static_cast<double>(out.value));
  if (out.residual > kSigmaResidualTol) {
    throw NumericalError("sigma_sp: inconsistent integer cocycle, residual " +
                         std::to_string(out.residual));
  }
  return out;
}

TheoremReport main_theorem_check(const SymplecticMatrix& g, const TheoremOptions& options) {
  const Integer w = options.window;
  const Integer dw = options.defect_window;
  if (w < 1 || options.N < 1 || options.k_max < 1 || dw < 1) {
    throw InvalidArgument("main_theorem_check: window, N, k_max and defect window must be >= 1");
  }
  const Section section = canonical_section_sp(g, options.k_max);
  PowerSequence powers(section.lift);

  TheoremReport report;
  report.window = w;
  report.r_hat = section.tau.value;
  report.r_hat_error = section.tau.error_radius;
  report.defect = section.tau.defect;
  report.section_near_boundary = section.near_boundary;
  report.rho = cohomology::make_class(section.tau.value, section.tau.error_radius);

  // beta(k) = floor(tau(s(g)^k)). tau(a^k) is homogenized from eta(a^{kj})
  // with a depth that shrinks as |k| grows, so every k costs powers up to
  // a common bound. Only the window entries and beta(N) enter the results,
  // and both get the full depth or enough of it.
  const Integer extent = std::max(options.N, 2 * dw);
  const Integer range = std::max(4 * w, extent + 1);
  const Integer budget = std::max(4 * options.k_max * w, 4 * range);
  std::vector<Integer> beta(static_cast<std::size_t>(2 * range + 1));
  std::vector<double> beta_radius(beta.size());
  powers.reserve(std::max(budget, 2 * range));
  for (Integer k = -range; k <= range; ++k) {
    const auto idx = static_cast<std::size_t>(k + range);
    if (k == 0) continue;
    const Integer depth = std::clamp<Integer>(budget / (2 * std::abs(k)), 1, options.k_max);
    const auto est = translation_number_sp(powers, k, depth);
    beta[idx] = snapped_floor(est.value, kFloorSnap);
    beta_radius[idx] = est.error_radius;
  }
  auto beta_at = [range, table = beta](Integer k) {
    if (k < -range || k > range) {
      throw InvalidArgument("pulled-back sigma evaluated outside its tabulated range");
    }
    return table[static_cast<std::size_t>(k + range)];
  };
  const auto phi_sigma = cohomology::make_cochain2(
      [beta_at](Integer k, Integer l) { return beta_at(l) - beta_at(k + l) + beta_at(k); }, w);

  report.cocycle_ok = cohomology::cocycle_check2(phi_sigma, w);

  const double r = report.r_hat;
  auto explained = [&](Integer m) {
    const double rad_m = beta_radius[static_cast<std::size_t>(m + range)];
    const double tol =
        10.0 * (static_cast<double>(std::abs(m)) * report.r_hat_error + rad_m) + kFloorSnap;
    return distance_to_integer(r * static_cast<double>(m)) < tol;
  };
  const Integer side = 2 * w + 1;
  report.sigma_table.resize(static_cast<std::size_t>(side * side));
  for (Integer k = -w; k <= w; ++k) {
    for (Integer l = -w; l <= w; ++l) {
      const Integer v = phi_sigma(k, l);
      report.sigma_table[static_cast<std::size_t>((k + w) * side + (l + w))] = v;
      report.sigma_max_abs = std::max(report.sigma_max_abs, std::abs(v));
      if (v == cohomology::floor_cocycle(r, k, l)) continue;
      if (explained(k) || explained(l) || explained(k + l)) {
        ++report.flagged;
      } else {
        ++report.unexplained;
      }
    }
  }
  report.bounded =
      static_cast<double>(report.sigma_max_abs) <= std::ceil(report.defect) + 1.0;

  report.cls = cohomology::extract_class(cohomology::negated(phi_sigma), options.N,
                                         cohomology::ExtractOptions{w, dw});
  report.difference_mod1 = circle_distance(report.cls.value, report.rho.value);
  return report;
}

}  // namespace rotlab::sp

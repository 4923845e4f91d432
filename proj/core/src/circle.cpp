#include "rotlab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "rotlab/error.hpp"
#include "rotlab/rational.hpp"

namespace rotlab::circle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double eval_pl(const PiecewiseLinear& pl, double x) {
  const auto& pts = pl.points;
  const double x0 = pts.front().first;
  const double shift = std::floor(x - x0);
  const double u = x - shift;  // u in [x0, x0 + 1)
  // First breakpoint strictly greater than u.
  auto it = std::upper_bound(pts.begin(), pts.end(), u,
                             [](double v, const auto& p) { return v < p.first; });
  const auto& lo = *(it - 1);
  const std::pair<double, double> hi =
      it == pts.end() ? std::pair{x0 + 1.0, pts.front().second + 1.0} : *it;
  const double t = (u - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second) + shift;
}

double arnold_inverse(const Arnold& a, double y) {
  const double amp = a.K / kTwoPi;
  double lo = y - a.omega - amp;
  double hi = y - a.omega + amp;
  double x = y - a.omega;
  for (int iter = 0; iter < 100; ++iter) {
    const double fx = x + a.omega + amp * std::sin(kTwoPi * x) - y;
    if (fx > 0) hi = x; else lo = x;
    const double dfx = 1.0 + a.K * std::cos(kTwoPi * x);
    double next = x - fx / dfx;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x)) || hi - lo < 1e-15) {
      return next;
    }
    x = next;
  }
  return x;
}

double apply(const CircleCoverElement::Factor& f, double x) {
  return f.inverted ? f.lift.inverse(x) : f.lift(x);
}

}  // namespace

// ---- CircleLift -----------------------------------------------------------

CircleLift CircleLift::rigid(double alpha) {
  if (!std::isfinite(alpha)) throw InvalidArgument("rigid: non-finite angle");
  return CircleLift(Rigid{alpha});
}

CircleLift CircleLift::arnold(double omega, double K) {
  if (!std::isfinite(omega) || !std::isfinite(K)) throw InvalidArgument("arnold: non-finite");
  if (K < 0.0 || K >= 1.0) throw InvalidArgument("arnold: K must lie in [0, 1)");
  return CircleLift(Arnold{omega, K});
}

CircleLift CircleLift::piecewise_linear(std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw InvalidArgument("pl: no breakpoints");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [x, fx] = points[i];
    if (!std::isfinite(x) || !std::isfinite(fx)) throw InvalidArgument("pl: non-finite value");
    if (x < 0.0 || x >= 1.0) throw InvalidArgument("pl: x must lie in [0, 1)");
    if (i > 0 && !(x > points[i - 1].first)) throw InvalidArgument("pl: x not strictly increasing");
    if (i > 0 && !(fx > points[i - 1].second)) {
      throw InvalidArgument("pl: F not strictly increasing");
    }
  }
  if (!(points.back().second < points.front().second + 1.0)) {
    throw InvalidArgument("pl: F(x_last) must be below F(x_0) + 1");
  }
  CircleLift out(PiecewiseLinear{std::move(points)});
  out.pl_inverse_ =
      std::make_shared<const PiecewiseLinear>(invert(std::get<PiecewiseLinear>(out.kind_)));
  return out;
}

double CircleLift::operator()(double x) const {
  return std::visit(
      [x](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Rigid>) {
          return x + k.alpha;
        } else if constexpr (std::is_same_v<T, Arnold>) {
          return x + k.omega + (k.K / kTwoPi) * std::sin(kTwoPi * x);
        } else {
          return eval_pl(k, x);
        }
      },
      kind_);
}

double CircleLift::inverse(double y) const {
  return std::visit(
      [this, y](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Rigid>) {
          return y - k.alpha;
        } else if constexpr (std::is_same_v<T, Arnold>) {
          return arnold_inverse(k, y);
        } else {
          return eval_pl(*pl_inverse_, y);
        }
      },
      kind_);
}

PiecewiseLinear invert(const PiecewiseLinear& pl) {
  std::vector<std::pair<double, double>> swapped;
  swapped.reserve(pl.points.size());
  for (const auto& [x, fx] : pl.points) {
    const double j = std::floor(fx);
    swapped.emplace_back(fx - j, x - j);
  }
  std::sort(swapped.begin(), swapped.end());
  return PiecewiseLinear{std::move(swapped)};
}

// ---- CircleCoverElement ---------------------------------------------------

CircleCoverElement::CircleCoverElement(CircleLift lift, Integer deck_offset)
    : deck_offset_(deck_offset) {
  factors_.push_back(Factor{std::move(lift), false});
}

double CircleCoverElement::operator()(double x) const {
  double y = x;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) y = apply(*it, y);
  return y + static_cast<double>(deck_offset_);
}

double CircleCoverElement::inverse_eval(double y) const {
  double x = y - static_cast<double>(deck_offset_);
  for (const auto& f : factors_) x = f.inverted ? f.lift(x) : f.lift.inverse(x);
  return x;
}

double CircleCoverElement::power_eval(Integer k, double x) const {
  if (auto a = rigid_angle()) return x + static_cast<double>(k) * *a;
  double y = x;
  if (k >= 0) {
    for (Integer i = 0; i < k; ++i) y = (*this)(y);
  } else {
    for (Integer i = 0; i < -k; ++i) y = inverse_eval(y);
  }
  return y;
}

CircleCoverElement CircleCoverElement::inverse() const {
  CircleCoverElement out;
  out.deck_offset_ = -deck_offset_;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (const auto* pl = std::get_if<PiecewiseLinear>(&it->lift.kind()); pl && !it->inverted) {
      out.factors_.push_back(Factor{CircleLift::piecewise_linear(invert(*pl).points), false});
    } else if (const auto* r = std::get_if<Rigid>(&it->lift.kind())) {
      out.factors_.push_back(Factor{CircleLift::rigid(it->inverted ? r->alpha : -r->alpha), false});
    } else {
      out.factors_.push_back(Factor{it->lift, !it->inverted});
    }
  }
  return out;
}

CircleCoverElement CircleCoverElement::shifted(Integer m) const {
  CircleCoverElement out = *this;
  out.deck_offset_ += m;
  return out;
}

std::optional<double> CircleCoverElement::rigid_angle() const {
  double total = static_cast<double>(deck_offset_);
  for (const auto& f : factors_) {
    const auto* r = std::get_if<Rigid>(&f.lift.kind());
    if (r == nullptr) return std::nullopt;
    total += f.inverted ? -r->alpha : r->alpha;
  }
  return total;
}

namespace {

bool materializable(const CircleCoverElement::Factor& f) {
  return !f.inverted && !std::holds_alternative<Arnold>(f.lift.kind());
}

bool is_pl(const CircleCoverElement::Factor& f) {
  return std::holds_alternative<PiecewiseLinear>(f.lift.kind());
}

// outer o inner for factors that are each rigid or piecewise linear.
CircleCoverElement::Factor merge(const CircleCoverElement::Factor& outer,
                                 const CircleCoverElement::Factor& inner,
                                 std::size_t budget) {
  const auto* ro = std::get_if<Rigid>(&outer.lift.kind());
  const auto* ri = std::get_if<Rigid>(&inner.lift.kind());
  if (ro && ri) return {CircleLift::rigid(ro->alpha + ri->alpha), false};

  // Breakpoints of outer o inner on [0, 1): those of inner, plus preimages
  // under inner of the breakpoints of outer.
  std::vector<double> xs;
  if (const auto* pi = std::get_if<PiecewiseLinear>(&inner.lift.kind())) {
    for (const auto& p : pi->points) xs.push_back(p.first);
  }
  if (const auto* po = std::get_if<PiecewiseLinear>(&outer.lift.kind())) {
    const double g0 = inner.lift(0.0);
    for (const auto& p : po->points) {
      const double y = p.first + std::ceil(g0 - p.first);  // y in [g0, g0 + 1)
      double x = inner.lift.inverse(y);
      x -= std::floor(x);
      xs.push_back(x);
    }
  }
  xs.push_back(0.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-15; }),
           xs.end());
  if (xs.size() > budget) {
    throw NumericalError("compose: breakpoint budget exceeded (" + std::to_string(xs.size()) + ")");
  }
  std::vector<std::pair<double, double>> pts;
  pts.reserve(xs.size());
  for (double x : xs) {
    if (x >= 1.0) continue;
    pts.emplace_back(x, outer.lift(inner.lift(x)));
  }
  return {CircleLift::piecewise_linear(std::move(pts)), false};
}

}  // namespace

CircleCoverElement compose(const CircleCoverElement& f, const CircleCoverElement& g,
                           std::size_t breakpoint_budget) {
  CircleCoverElement out;
  out.deck_offset_ = f.deck_offset_ + g.deck_offset_;
  out.factors_ = f.factors_;
  for (const auto& inner : g.factors_) {
    if (!out.factors_.empty() && materializable(out.factors_.back()) && materializable(inner) &&
        (is_pl(out.factors_.back()) || is_pl(inner) ||
         std::holds_alternative<Rigid>(inner.lift.kind()))) {
      out.factors_.back() = merge(out.factors_.back(), inner, breakpoint_budget);
    } else {
      out.factors_.push_back(inner);
    }
  }
  // Drop identity rotations left behind by folding.
  std::erase_if(out.factors_, [](const CircleCoverElement::Factor& fa) {
    const auto* r = std::get_if<Rigid>(&fa.lift.kind());
    return r != nullptr && r->alpha == 0.0;
  });
  return out;
}

Estimate translation_number_circle(const CircleCoverElement& f, Integer n_iter) {
  if (n_iter < 1) throw InvalidArgument("translation_number_circle: n_iter must be >= 1");
  if (auto a = f.rigid_angle()) return Estimate{*a, 0.0};
  const double n = static_cast<double>(n_iter);
  return Estimate{f.power_eval(n_iter, 0.0) / n, 1.0 / n};
}

namespace {

// floor(F^m(0)) with the rational guard for rotations.
Integer orbit_floor(const CircleCoverElement& f, Integer m, double value) {
  if (auto a = f.rigid_angle()) return guarded_floor_product(*a, m);
  return static_cast<Integer>(std::floor(value));
}

}  // namespace

CircleCoverElement canonical_section_circle(const CircleCoverElement& g) {
  // Products such as g^k g^-k come back as -1e-16 at 0; snap those onto the integer.
  if (auto a = g.rigid_angle()) return g.shifted(-guarded_floor_product(*a, 1));
  return g.shifted(-snapped_floor(g(0.0), kSectionSnap));
}

Integer euler_cocycle_circle(const CircleCoverElement& g, const CircleCoverElement& h) {
  const CircleCoverElement sg = canonical_section_circle(g);
  const CircleCoverElement sh = canonical_section_circle(h);
  const CircleCoverElement sgh = canonical_section_circle(compose(g, h));
  const double raw = sg(sh(0.0)) - sgh(0.0);
  const double m = std::nearbyint(raw);
  if (std::abs(raw - m) > 0.1) {
    throw NumericalError("euler_cocycle_circle: raw value " + std::to_string(raw) +
                         " is not near an integer");
  }
  return static_cast<Integer>(m);
}

namespace {

// Orbit of one point under integer powers: values[k + radius] = F^k(x).
struct Orbit {
  Integer radius = 0;
  std::vector<double> values;

  double at(Integer k) const { return values[static_cast<std::size_t>(k + radius)]; }
};

Orbit orbit(const CircleCoverElement& f, double x, Integer radius) {
  Orbit o{radius, std::vector<double>(static_cast<std::size_t>(2 * radius + 1))};
  o.values[static_cast<std::size_t>(radius)] = x;
  if (auto a = f.rigid_angle()) {
    for (Integer k = -radius; k <= radius; ++k) {
      o.values[static_cast<std::size_t>(k + radius)] = x + static_cast<double>(k) * *a;
    }
    return o;
  }
  double y = x;
  for (Integer k = 1; k <= radius; ++k) o.values[static_cast<std::size_t>(radius + k)] = y = f(y);
  y = x;
  for (Integer k = 1; k <= radius; ++k) {
    o.values[static_cast<std::size_t>(radius - k)] = y = f.inverse_eval(y);
  }
  return o;
}

}  // namespace

cohomology::IntegerCochain2 pulled_back_euler_cocycle(const CircleCoverElement& g, Integer window,
                                                      Integer extent) {
  if (window < 1 || extent < 1) throw InvalidArgument("pulled_back_euler_cocycle: bad window");
  // With x_m = F^m(0), s(g^k)(s(g^l)(0)) - s(g^{k+l})(0) reduces to
  // floor(x_{k+l}) - floor(x_k) - floor(x_l). Only the orbit of 0 is needed,
  // and both of its directions are numerically stable; composing through
  // s(g^l)(0) instead would iterate the inverse away from attracting orbits.
  const Orbit zero = orbit(g, 0.0, std::max(4 * window, extent + 2));
  auto floors = std::make_shared<std::vector<Integer>>(zero.values.size());
  for (Integer m = -zero.radius; m <= zero.radius; ++m) {
    (*floors)[static_cast<std::size_t>(m + zero.radius)] = orbit_floor(g, m, zero.at(m));
  }
  auto eval = [g, radius = zero.radius,
               floors = std::shared_ptr<const std::vector<Integer>>(floors)](Integer k,
                                                                            Integer l) -> Integer {
    auto fl = [&](Integer m) {
      if (std::abs(m) <= radius) return (*floors)[static_cast<std::size_t>(m + radius)];
      return orbit_floor(g, m, g.power_eval(m, 0.0));
    };
    return fl(k + l) - fl(k) - fl(l);
  };
  return cohomology::make_cochain2(std::move(eval), window);
}

GhysReport ghys_check(const CircleCoverElement& g, const GhysOptions& options) {
  GhysReport report;
  const Estimate tau = translation_number_circle(g, options.n_iter);
  report.rho = cohomology::make_class(tau.value, tau.error_radius);

  const Integer extent = std::max(options.N, 2 * options.defect_window) + 1;
  const auto chi = cohomology::tabulated(pulled_back_euler_cocycle(g, options.window, extent),
                                         2 * options.window);
  // e_b = [chi]; phi_g^* chi = -c_rho for rotations, so the class is read off directly.
  report.cls = cohomology::extract_class(chi, options.N,
                                         {options.window, options.defect_window});
  report.difference_mod1 = circle_distance(report.cls.value, report.rho.value);

  const auto rigid = g.rigid_angle();
  Integer mismatches = 0;
  for (Integer k = -options.window; k <= options.window; ++k) {
    for (Integer l = -options.window; l <= options.window; ++l) {
      const Integer v = chi(k, l);
      report.chi_min = std::min(report.chi_min, v);
      report.chi_max = std::max(report.chi_max, v);
      report.chi_max_abs = std::max(report.chi_max_abs, std::abs(v));
      if (rigid && v != -cohomology::floor_cocycle(*rigid, k, l)) ++mismatches;
    }
  }
  if (rigid) report.rigid_mismatches = mismatches;
  return report;
}

CircleLift read_breakpoint_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open breakpoint file: " + path);
  std::vector<std::pair<double, double>> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected `x,Fx`");
    }
    try {
      std::size_t used = 0;
      const double x = std::stod(line.substr(0, comma), &used);
      const double fx = std::stod(line.substr(comma + 1));
      pts.emplace_back(x, fx);
    } catch (const std::logic_error&) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return CircleLift::piecewise_linear(std::move(pts));
}

namespace {

double parse_double(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::logic_error&) {
    throw InvalidArgument("malformed lift spec `" + spec + "`: bad number `" + s + "`");
  }
}

}  // namespace

CircleLift parse_lift_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw InvalidArgument("empty lift spec");
  if (parts[0] == "rigid" && parts.size() == 2) {
    return CircleLift::rigid(parse_double(parts[1], spec));
  }
  if (parts[0] == "arnold" && parts.size() == 3) {
    return CircleLift::arnold(parse_double(parts[1], spec), parse_double(parts[2], spec));
  }
  if (parts[0] == "pl" && parts.size() >= 2) {
    // Paths may themselves contain ':'.
    return read_breakpoint_file(spec.substr(3));
  }
  throw InvalidArgument("malformed lift spec `" + spec +
                        "` (expected rigid:<a>, arnold:<w>:<K> or pl:<file>)");
}

}  // namespace rotlab::circle

#include "rotlab/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "rotlab/error.hpp"
#include "rotlab/rational.hpp"

namespace rotlab::cohomology {

namespace {

Integer checked_add(Integer a, Integer b) {
  Integer out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in cochain sum");
  return out;
}

Integer checked_sub(Integer a, Integer b) {
  Integer out = 0;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in cochain difference");
  }
  return out;
}

Integer checked_abs(Integer a) {
  if (a == std::numeric_limits<Integer>::min()) throw OverflowError("integer overflow in |.|");
  return a < 0 ? -a : a;
}

void require_window(Integer window, const char* what) {
  if (window < 1) throw InvalidArgument(std::string(what) + ": window must be >= 1");
}

}  // namespace

ClassValue make_class(double representative, double error_radius) {
  return ClassValue{mod1(representative), error_radius};
}

IntegerCochain1 floor_cochain(double r) {
  if (!std::isfinite(r)) throw InvalidArgument("floor_cochain: non-finite slope");
  IntegerCochain1 f;
  f.eval = [r](Integer n) { return guarded_floor_product(r, n); };
  f.floor_slope = r;
  return f;
}

IntegerCochain1 linear_cochain(Integer slope) {
  IntegerCochain1 f;
  f.eval = [slope](Integer n) {
    Integer out = 0;
    if (__builtin_mul_overflow(slope, n, &out)) throw OverflowError("linear cochain overflow");
    return out;
  };
  f.linear_slope = slope;
  return f;
}

IntegerCochain1 make_cochain1(std::function<Integer(Integer)> eval, Integer window_hint) {
  IntegerCochain1 f;
  f.eval = std::move(eval);
  f.window_hint = window_hint;
  return f;
}

IntegerCochain2 make_cochain2(std::function<Integer(Integer, Integer)> eval,
                              Integer window_hint) {
  return IntegerCochain2{std::move(eval), window_hint};
}

IntegerCochain2 floor_cocycle_cochain(double r) {
  if (!std::isfinite(r)) throw InvalidArgument("floor_cocycle: non-finite r");
  return make_cochain2([r](Integer n, Integer m) { return floor_cocycle(r, n, m); });
}

IntegerCochain2 coboundary_cochain(const IntegerCochain1& f) {
  return make_cochain2([f](Integer n, Integer m) { return coboundary1(f, n, m); },
                       kDefaultCocycleWindow);
}

IntegerCochain2 negated(const IntegerCochain2& c) {
  return make_cochain2([c](Integer n, Integer m) { return checked_sub(0, c(n, m)); },
                       c.window_hint);
}

IntegerCochain2 sum(const IntegerCochain2& a, const IntegerCochain2& b) {
  return make_cochain2([a, b](Integer n, Integer m) { return checked_add(a(n, m), b(n, m)); },
                       std::max(a.window_hint, b.window_hint));
}

IntegerCochain1 tabulated(const IntegerCochain1& f, Integer radius) {
  if (radius < 0) throw InvalidArgument("tabulated: negative radius");
  auto table = std::make_shared<std::vector<Integer>>(static_cast<std::size_t>(2 * radius + 1));
  for (Integer n = -radius; n <= radius; ++n) (*table)[static_cast<std::size_t>(n + radius)] = f(n);
  IntegerCochain1 out = f;
  out.eval = [f, radius, table = std::shared_ptr<const std::vector<Integer>>(table)](Integer n) {
    if (n >= -radius && n <= radius) return (*table)[static_cast<std::size_t>(n + radius)];
    return f(n);
  };
  return out;
}

IntegerCochain2 tabulated(const IntegerCochain2& c, Integer radius) {
  if (radius < 0) throw InvalidArgument("tabulated: negative radius");
  const auto side = static_cast<std::size_t>(2 * radius + 1);
  auto table = std::make_shared<std::vector<Integer>>(side * side);
  for (Integer n = -radius; n <= radius; ++n) {
    for (Integer m = -radius; m <= radius; ++m) {
      (*table)[static_cast<std::size_t>(n + radius) * side + static_cast<std::size_t>(m + radius)] =
          c(n, m);
    }
  }
  return make_cochain2(
      [c, radius, side, table = std::shared_ptr<const std::vector<Integer>>(table)](Integer n,
                                                                                   Integer m) {
        if (n >= -radius && n <= radius && m >= -radius && m <= radius) {
          return (*table)[static_cast<std::size_t>(n + radius) * side +
                          static_cast<std::size_t>(m + radius)];
        }
        return c(n, m);
      },
      c.window_hint);
}

Integer coboundary1(const IntegerCochain1& f, Integer n, Integer m) {
  return checked_add(checked_sub(f(m), f(checked_add(n, m))), f(n));
}

Integer coboundary2(const IntegerCochain2& c, Integer a, Integer b, Integer d) {
  const Integer t1 = c(b, d);
  const Integer t2 = c(checked_add(a, b), d);
  const Integer t3 = c(a, checked_add(b, d));
  const Integer t4 = c(a, b);
  return checked_sub(checked_add(checked_sub(t1, t2), t3), t4);
}

std::optional<CocycleViolation> find_cocycle_violation(const IntegerCochain2& c, Integer window) {
  require_window(window, "cocycle_check2");
  // Every argument pair stays inside [-2 window, 2 window]^2.
  const Integer r = 2 * window;
  const auto side = static_cast<std::size_t>(2 * r + 1);
  std::vector<Integer> table(side * side);
  for (Integer n = -r; n <= r; ++n) {
    for (Integer m = -r; m <= r; ++m) {
      table[static_cast<std::size_t>(n + r) * side + static_cast<std::size_t>(m + r)] = c(n, m);
    }
  }
  auto at = [&](Integer n, Integer m) {
    return table[static_cast<std::size_t>(n + r) * side + static_cast<std::size_t>(m + r)];
  };
  for (Integer a = -window; a <= window; ++a) {
    for (Integer b = -window; b <= window; ++b) {
      for (Integer d = -window; d <= window; ++d) {
        Integer v = 0;
        const bool overflow = __builtin_sub_overflow(at(b, d), at(a + b, d), &v) ||
                              __builtin_add_overflow(v, at(a, b + d), &v) ||
                              __builtin_sub_overflow(v, at(a, b), &v);
        if (overflow) throw OverflowError("integer overflow in cocycle check");
        if (v != 0) return CocycleViolation{a, b, d, v};
      }
    }
  }
  return std::nullopt;
}

bool cocycle_check2(const IntegerCochain2& c, Integer window) {
  return !find_cocycle_violation(c, window).has_value();
}

DefectEstimate defect(const IntegerCochain1& f, Integer window) {
  require_window(window, "defect");
  if (f.linear_slope) return DefectEstimate{0.0, window, true};

  const IntegerCochain1 table = tabulated(f, 2 * window);
  Integer worst = 0;
  for (Integer n = -window; n <= window; ++n) {
    for (Integer m = -window; m <= window; ++m) {
      worst = std::max(worst, checked_abs(coboundary1(table, n, m)));
    }
  }
  // |d beta_r| <= 1 always, so a scan that reaches 1 has found the supremum;
  // for integer r the cochain is a homomorphism and the supremum is 0.
  bool exact = false;
  if (f.floor_slope) {
    const double r = *f.floor_slope;
    exact = worst == 1 || (worst == 0 && r == std::floor(r));
  }
  return DefectEstimate{static_cast<double>(worst), window, exact};
}

Estimate homogenize(const IntegerCochain1& f, Integer k_max, std::optional<double> defect_bound) {
  if (k_max < 1) throw InvalidArgument("homogenize: k_max must be >= 1");
  if (f.linear_slope) return Estimate{static_cast<double>(*f.linear_slope), 0.0};

  double d = 0.0;
  if (defect_bound) {
    d = *defect_bound;
  } else if (f.floor_slope) {
    d = (*f.floor_slope == std::floor(*f.floor_slope)) ? 0.0 : 1.0;
  } else {
    d = defect(f, std::min<Integer>(k_max, 1024)).value;
  }
  const double kd = static_cast<double>(k_max);
  return Estimate{static_cast<double>(f(k_max)) / kd, d / kd};
}

Integer floor_cocycle(double r, Integer n, Integer m) {
  if (!std::isfinite(r)) throw InvalidArgument("floor_cocycle: non-finite r");
  const Integer a = guarded_floor_product(r, n);
  const Integer b = guarded_floor_product(r, m);
  const Integer c = guarded_floor_product(r, checked_add(n, m));
  return checked_sub(checked_add(a, b), c);
}

IntegerCochain1 primitive(const IntegerCochain2& c, Integer extent) {
  if (extent < 1) throw InvalidArgument("primitive: extent must be >= 1");
  auto table = std::make_shared<std::vector<Integer>>(static_cast<std::size_t>(2 * extent + 1));
  auto at = [&](Integer n) -> Integer& { return (*table)[static_cast<std::size_t>(n + extent)]; };
  // df(n, 1) = f(1) - f(n + 1) + f(n) = c(n, 1) with f(1) = 0.
  at(0) = c(0, 1);
  for (Integer n = 0; n < extent; ++n) at(n + 1) = checked_sub(at(n), c(n, 1));
  for (Integer n = 0; n > -extent; --n) at(n - 1) = checked_add(at(n), c(n - 1, 1));

  IntegerCochain1 f;
  f.window_hint = extent;
  f.eval = [extent, table = std::shared_ptr<const std::vector<Integer>>(table)](Integer n) {
    if (n < -extent || n > extent) {
      throw InvalidArgument("primitive evaluated outside its tabulated range");
    }
    return (*table)[static_cast<std::size_t>(n + extent)];
  };
  return f;
}

ClassValue extract_class(const IntegerCochain2& c, Integer N, const ExtractOptions& options) {
  if (N < 1) throw InvalidArgument("extract_class: N must be >= 1");
  if (auto bad = find_cocycle_violation(c, options.cocycle_window)) {
    throw InvalidArgument("extract_class: not a cocycle, dc(" + std::to_string(bad->a) + "," +
                          std::to_string(bad->b) + "," + std::to_string(bad->d) +
                          ") = " + std::to_string(bad->value));
  }
  const Integer extent = std::max(N, 2 * options.defect_window);
  const IntegerCochain1 f = primitive(c, extent);
  const double d = defect(f, options.defect_window).value;
  const double n = static_cast<double>(N);
  const ClassValue out = make_class(-static_cast<double>(f(N)) / n, d / n);
  if (out.error_radius >= 0.5) {
    throw NumericalError("extract_class: error radius " + std::to_string(out.error_radius) +
                         " >= 1/2");
  }
  return out;
}

}  // namespace rotlab::cohomology

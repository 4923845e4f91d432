#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rotlab/cohomology.hpp"
#include "rotlab/error.hpp"
#include "rotlab/rational.hpp"

using namespace rotlab;
using namespace rotlab::cohomology;

namespace {

// A cochain backed by random values in [-amp, amp] on [-radius, radius].
IntegerCochain1 random_cochain1(std::uint64_t seed, Integer radius, Integer amp) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Integer> u(-amp, amp);
  auto values = std::make_shared<std::vector<Integer>>();
  for (Integer n = -radius; n <= radius; ++n) values->push_back(u(rng));
  return make_cochain1([values, radius](Integer n) {
    return (*values)[static_cast<std::size_t>(n + radius)];
  }, radius);
}

}  // namespace

TEST(Rational, BestRationalRecoversSimpleFractions) {
  const auto q = best_rational(1.0 / 3.0, 1000);
  EXPECT_EQ(q.num, 1);
  EXPECT_EQ(q.den, 3);
  const auto p = best_rational(std::numbers::pi, 1000);
  EXPECT_EQ(p.num, 355);
  EXPECT_EQ(p.den, 113);
  const auto neg = best_rational(-0.75, 10);
  EXPECT_EQ(neg.num, -3);
  EXPECT_EQ(neg.den, 4);
}

TEST(Rational, Mod1AndCircleDistance) {
  EXPECT_DOUBLE_EQ(mod1(-0.25), 0.75);
  EXPECT_DOUBLE_EQ(mod1(3.5), 0.5);
  EXPECT_NEAR(circle_distance(0.95, 0.05), 0.1, 1e-15);
  EXPECT_NEAR(circle_distance(0.2, 1.2), 0.0, 1e-15);
}

TEST(Rational, SnappedFloor) {
  EXPECT_EQ(snapped_floor(2.9999999999, 1e-9), 3);
  EXPECT_EQ(snapped_floor(2.99, 1e-9), 2);
  EXPECT_EQ(snapped_floor(-1e-12, 1e-9), 0);
  EXPECT_THROW(snapped_floor(std::nan(""), 1e-9), InvalidArgument);
}

TEST(FloorCocycle, ReferenceValues) {
  EXPECT_EQ(floor_cocycle(0.5, 1, 1), -1);
  EXPECT_EQ(floor_cocycle(1.0 / 3.0, 1, 1), 0);
  EXPECT_EQ(floor_cocycle(0.5, 1, -1), -1);
  EXPECT_EQ(floor_cocycle(0.0, 5, 7), 0);
  EXPECT_EQ(floor_cocycle(3.0, -11, 4), 0);
}

TEST(FloorCocycle, DecimalBreakpointsFollowTheIntendedRational) {
  // 0.3 is not exactly 3/10 in binary, but the guard decides floor(0.3 * 10) = 3.
  EXPECT_EQ(floor_cochain(0.3)(10), 3);
  EXPECT_EQ(floor_cochain(0.3)(-10), -3);
  EXPECT_EQ(floor_cochain(1.0 / 3.0)(3), 1);
  EXPECT_EQ(floor_cochain(0.7)(-30), -21);
  for (std::int64_t n = -500; n <= 500; ++n) {
    EXPECT_EQ(floor_cochain(0.3)(n), oracle::rational_floor(3, 10, n)) << n;
    EXPECT_EQ(floor_cochain(0.7)(n), oracle::rational_floor(7, 10, n)) << n;
  }
}

TEST(FloorCocycle, MatchesExactFloorOracleForRandomSlopes) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    const double r = u(rng);
    for (Integer n = -200; n <= 200; n += 3) {
      for (Integer m = -200; m <= 200; m += 7) {
        const Integer want = oracle::exact_floor(r, n) + oracle::exact_floor(r, m) -
                             oracle::exact_floor(r, n + m);
        ASSERT_EQ(floor_cocycle(r, n, m), want) << r << " " << n << " " << m;
      }
    }
  }
}

TEST(FloorCocycle, PropertyValuesInMinusOneZero) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ur(-10.0, 10.0);
  std::uniform_int_distribution<Integer> un(-1'000'000, 1'000'000);
  for (int i = 0; i < 1'000'000; ++i) {
    const Integer v = floor_cocycle(ur(rng), un(rng), un(rng));
    ASSERT_TRUE(v == 0 || v == -1) << v;
  }
}

TEST(FloorCocycle, NonFiniteSlopeIsRejected) {
  EXPECT_THROW(floor_cocycle(std::numeric_limits<double>::infinity(), 1, 1), InvalidArgument);
  EXPECT_THROW(floor_cochain(std::nan("")), InvalidArgument);
}

TEST(Coboundary, SquareIsZeroOnRandomCochains) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = random_cochain1(seed, 300, 1000);
    EXPECT_TRUE(cocycle_check2(coboundary_cochain(f), 32));
  }
}

TEST(Coboundary, ConventionOnSmallExample) {
  const auto f = make_cochain1([](Integer n) { return n * n; });
  // df(n, m) = f(m) - f(n + m) + f(n) = -2nm.
  EXPECT_EQ(coboundary1(f, 3, 4), -24);
}

TEST(Coboundary, RandomTwoCochainIsNotACocycle) {
  std::mt19937_64 rng(3);
  auto values = std::make_shared<std::vector<Integer>>();
  std::uniform_int_distribution<Integer> u(-1, 1);
  const Integer r = 20;
  for (Integer i = 0; i < (2 * r + 1) * (2 * r + 1); ++i) values->push_back(u(rng));
  const auto c = make_cochain2([values, r](Integer n, Integer m) {
    return (*values)[static_cast<std::size_t>((n + r) * (2 * r + 1) + (m + r))];
  });
  const auto bad = find_cocycle_violation(c, 10);
  ASSERT_TRUE(bad.has_value());
  EXPECT_NE(bad->value, 0);
  EXPECT_EQ(coboundary2(c, bad->a, bad->b, bad->d), bad->value);
}

TEST(Coboundary, OverflowIsReported) {
  const auto f = linear_cochain(std::numeric_limits<Integer>::max() / 2 + 1);
  EXPECT_THROW(f(2), OverflowError);
  const auto g = make_cochain1([](Integer n) {
    return n == 1 ? std::numeric_limits<Integer>::max() : Integer{0};
  });
  EXPECT_THROW(coboundary1(g, 1, 1), OverflowError);
}

TEST(Defect, FloorCochainHasDefectOne) {
  const auto d = defect(floor_cochain(0.37), 64);
  EXPECT_EQ(d.value, 1.0);
  EXPECT_TRUE(d.exact);
  const auto di = defect(floor_cochain(2.0), 64);
  EXPECT_EQ(di.value, 0.0);
  EXPECT_TRUE(di.exact);
  EXPECT_EQ(defect(linear_cochain(5), 64).value, 0.0);
}

TEST(Defect, MatchesBruteForceOracle) {
  const Integer W = 40;
  const auto base = floor_cochain(0.61);
  const auto noise = random_cochain1(99, 4 * W, 2);
  const auto f = make_cochain1([base, noise](Integer n) { return base(n) + noise(n); });
  Integer brute = 0;
  for (Integer n = -W; n <= W; ++n) {
    for (Integer m = -W; m <= W; ++m) {
      const Integer v = f(m) - f(n + m) + f(n);
      brute = std::max(brute, v < 0 ? -v : v);
    }
  }
  EXPECT_EQ(defect(f, W).value, static_cast<double>(brute));
  EXPECT_FALSE(defect(f, W).exact);
}

TEST(Homogenize, FloorAndLinear) {
  const auto e = homogenize(floor_cochain(0.3), 1000);
  EXPECT_LE(std::abs(e.value - 0.3), e.error_radius);
  EXPECT_DOUBLE_EQ(e.error_radius, 1.0 / 1000.0);
  const auto l = homogenize(linear_cochain(-7), 10);
  EXPECT_EQ(l.value, -7.0);
  EXPECT_EQ(l.error_radius, 0.0);
  EXPECT_THROW(homogenize(floor_cochain(0.3), 0), InvalidArgument);
}

TEST(Primitive, CoboundaryOfPrimitiveIsTheCocycle) {
  const auto c = floor_cocycle_cochain(0.4142);
  const auto f = primitive(c, 200);
  for (Integer n = -50; n <= 50; ++n) {
    for (Integer m = -50; m <= 50; ++m) ASSERT_EQ(coboundary1(f, n, m), c(n, m));
  }
  EXPECT_THROW(f(201), InvalidArgument);
}

TEST(ExtractClass, FloorCocycleGivesMinusR) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const double r = u(rng);
    const auto cls = extract_class(floor_cocycle_cochain(r));
    EXPECT_LE(circle_distance(cls.value, -r), std::max(cls.error_radius, 1e-4)) << r;
    const auto neg = extract_class(negated(floor_cocycle_cochain(r)));
    EXPECT_LE(circle_distance(neg.value, r), std::max(neg.error_radius, 1e-4)) << r;
  }
}

TEST(ExtractClass, ReferenceValues) {
  EXPECT_NEAR(extract_class(floor_cocycle_cochain(0.5)).value, 0.5, 1e-12);
  EXPECT_NEAR(extract_class(floor_cocycle_cochain(0.25)).value, 0.75, 1e-12);
  const auto zero = extract_class(make_cochain2([](Integer, Integer) { return Integer{0}; }));
  EXPECT_EQ(zero.value, 0.0);
}

TEST(ExtractClass, PropertyInvariantUnderBoundedCoboundaries) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const double r = 0.1 + 0.17 * static_cast<double>(seed);
    const auto b = random_cochain1(seed, 30'000, 3);
    const auto c = floor_cocycle_cochain(r);
    const auto shifted = sum(c, coboundary_cochain(b));
    const auto a = extract_class(c);
    const auto s = extract_class(shifted);
    EXPECT_LE(circle_distance(a.value, s.value), a.error_radius + s.error_radius) << seed;
  }
}

TEST(ExtractClass, RejectsNonCocyclesAndBadLengths) {
  const auto c = make_cochain2([](Integer n, Integer m) { return n * n * m; });
  EXPECT_THROW(extract_class(c), InvalidArgument);
  EXPECT_THROW(extract_class(floor_cocycle_cochain(0.3), 0), InvalidArgument);
}

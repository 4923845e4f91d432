#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rotlab/error.hpp"
#include "rotlab/linalg.hpp"
#include "rotlab/rational.hpp"
#include "rotlab/theorem.hpp"

using namespace rotlab;
using namespace rotlab::sp;
using linalg::rotation2;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SymplecticMatrix turn(double fraction) { return SymplecticMatrix(rotation2(kTwoPi * fraction)); }

SymplecticMatrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return SymplecticMatrix(m);
}

}  // namespace

TEST(RotationNumber, ReferenceValues) {
  EXPECT_NEAR(rotation_number_sp(SymplecticMatrix(rotation2(std::numbers::pi / 3))).value,
              1.0 / 6.0, 1e-12);
  EXPECT_LE(circle_distance(rotation_number_sp(SymplecticMatrix(-Matrix::Identity(2, 2))).value,
                            0.5),
            1e-12);
  EXPECT_LE(circle_distance(rotation_number_sp(diag2(2.0, 0.5)).value, 0.0), 1e-9);
  EXPECT_LE(circle_distance(rotation_number_sp(diag2(-2.0, -0.5)).value, 0.5), 1e-9);
}

TEST(RotationNumber, MatchesTwoByTwoOracle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_symplectic(1, seed, 1.0);
    const auto r = rotation_number_sp(g);
    EXPECT_LE(circle_distance(r.value, oracle::rotation_number_2x2(g.matrix())),
              std::max(r.error_radius, 4e-3))
        << seed;
  }
}

TEST(RotationNumber, PropertyAgreesWithEigenvalueFormula) {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_symplectic(2, seed, 0.6);
    ClassValue e;
    try {
      e = eigenvalue_rotation_number(g);
    } catch (const NumericalError&) {
      continue;
    }
    ++compared;
    const auto r = rotation_number_sp(g);
    EXPECT_LE(circle_distance(r.value, e.value), std::max(r.error_radius + e.error_radius, 4e-3))
        << seed;
  }
  EXPECT_GE(compared, 15);
}

TEST(RotationNumber, PropertyConjugationInvariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_symplectic(2, seed, 0.6);
    const auto h = random_symplectic(2, 300 + seed, 0.6);
    const auto a = rotation_number_sp(g);
    const auto b = rotation_number_sp(h * g * h.inverse());
    EXPECT_LE(circle_distance(a.value, b.value), std::max(a.error_radius + b.error_radius, 4e-3))
        << seed;
  }
}

TEST(CanonicalSection, TranslationNumberInUnitInterval) {
  const auto id = canonical_section_sp(SymplecticMatrix::identity(2));
  EXPECT_EQ(id.lift.deck_offset(), 0);
  EXPECT_NEAR(id.tau.value, 0.0, 1e-14);
  const auto r = canonical_section_sp(SymplecticMatrix(rotation2(std::numbers::pi / 3)));
  EXPECT_EQ(r.lift.deck_offset(), 0);
  EXPECT_NEAR(r.tau.value, 1.0 / 6.0, 1e-12);
  EXPECT_FALSE(r.near_boundary);
  // The polar path of R(-0.4 pi) winds negatively; the section moves it up one sheet.
  const auto neg = canonical_section_sp(turn(-0.2));
  EXPECT_EQ(neg.lift.deck_offset(), 1);
  EXPECT_NEAR(neg.tau.value, 0.8, 1e-12);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = canonical_section_sp(random_symplectic(2, seed, 0.8));
    EXPECT_GE(s.tau.value, -kFloorSnap);
    EXPECT_LT(s.tau.value, 1.0);
  }
}

TEST(Sigma, ReferenceValues) {
  EXPECT_EQ(sigma_sp(turn(0.3), turn(0.3)).value, 0);
  EXPECT_EQ(sigma_sp(turn(0.9), turn(0.9)).value, -1);
  EXPECT_EQ(sigma_sp(turn(0.6), turn(0.6)).value, -1);
  EXPECT_EQ(sigma_sp(SymplecticMatrix::identity(1), random_symplectic(1, 4, 1.0)).value, 0);
  EXPECT_LE(sigma_sp(turn(0.9), turn(0.9)).residual, 1e-9);
}

TEST(Sigma, PropertyGroupCocycle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto a = random_symplectic(1, 3 * seed, 1.2);
    const auto b = random_symplectic(1, 3 * seed + 1, 1.2);
    const auto d = random_symplectic(1, 3 * seed + 2, 1.2);
    const Integer delta = sigma_sp(b, d).value - sigma_sp(a * b, d).value +
                          sigma_sp(a, b * d).value - sigma_sp(a, b).value;
    EXPECT_EQ(delta, 0) << seed;
  }
}

TEST(MainTheorem, RotationPullsBackToTheFloorCocycle) {
  TheoremOptions opt;
  opt.window = 12;
  opt.N = 1000;
  const auto rep = main_theorem_check(turn(0.3), opt);
  EXPECT_NEAR(rep.cls.value, 0.3, 1e-3);
  EXPECT_NEAR(rep.rho.value, 0.3, 1e-9);
  EXPECT_LE(rep.difference_mod1, 1e-3);
  EXPECT_TRUE(rep.cocycle_ok);
  EXPECT_TRUE(rep.bounded);
  EXPECT_EQ(rep.flagged, 0);
  EXPECT_EQ(rep.unexplained, 0);
  for (Integer k = -12; k <= 12; ++k) {
    for (Integer l = -12; l <= 12; ++l) {
      const Integer c = oracle::rational_floor(3, 10, k) + oracle::rational_floor(3, 10, l) -
                        oracle::rational_floor(3, 10, k + l);
      EXPECT_EQ(rep.sigma(k, l), c) << k << " " << l;
    }
  }
}

TEST(MainTheorem, IdentityGivesZeroTable) {
  TheoremOptions opt;
  opt.window = 6;
  opt.N = 200;
  const auto rep = main_theorem_check(SymplecticMatrix::identity(2), opt);
  for (Integer v : rep.sigma_table) EXPECT_EQ(v, 0);
  EXPECT_EQ(rep.sigma_max_abs, 0);
  EXPECT_LE(circle_distance(rep.cls.value, 0.0), 1e-12);
  EXPECT_LE(circle_distance(rep.rho.value, 0.0), 1e-12);
}

TEST(MainTheorem, RandomSp4Agrees) {
  const auto rep = main_theorem_check(random_symplectic(2, 42, 0.5));
  EXPECT_LE(rep.difference_mod1, 1e-3);
  EXPECT_TRUE(rep.cocycle_ok);
  EXPECT_TRUE(rep.bounded);
  EXPECT_EQ(rep.unexplained, 0);
}

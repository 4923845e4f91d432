#include <cmath>
#include <numbers>
#include <vector>

#include "rotlab/error.hpp"
#include "rotlab/rational.hpp"
#include "rotlab/symplectic.hpp"

namespace rotlab::sp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Cluster {
  std::complex<double> center;
  std::vector<Eigen::Index> members;
};

}  // namespace

ClassValue eigenvalue_rotation_number(const SymplecticMatrix& g, const EigenOptions& options) {
  const Matrix& m = g.matrix();
  if (m.rows() > 8) throw InvalidArgument("eigenvalue_rotation_number: dimension above 8");

  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  const linalg::CVector values = solver.eigenvalues();
  CMatrix vectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) vectors.col(j).normalize();

  const Eigen::JacobiSVD<CMatrix> svd(vectors);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(cond < options.max_condition)) throw NumericalError("semisimplicity check failed");

  const Matrix J = linalg::standard_J(g.half_dim());
  const double eig_err = cond * 1e-15 * std::max(1.0, m.norm());

  std::vector<Cluster> upper;  // unit-circle eigenvalues with Im > 0
  Eigen::Index minus_one = 0;
  Eigen::Index negative_real = 0;
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    const auto lambda = values(j);
    const bool unit = std::abs(std::abs(lambda) - 1.0) < options.unit_circle_tol;
    const bool real = std::abs(lambda.imag()) < options.unit_circle_tol;
    if (real) {
      if (lambda.real() < 0) (unit ? minus_one : negative_real) += 1;
      continue;
    }
    if (!unit || lambda.imag() < 0) continue;
    bool placed = false;
    for (auto& c : upper) {
      if (std::abs(c.center - lambda) < options.cluster_tol) {
        c.members.push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed) upper.push_back(Cluster{lambda, {j}});
  }

  double total = 0.25 * static_cast<double>(minus_one + negative_real);
  double radius = 0.0;
  for (const auto& c : upper) {
    const auto size = static_cast<Eigen::Index>(c.members.size());
    CMatrix V(m.rows(), size);
    for (Eigen::Index a = 0; a < size; ++a) V.col(a) = vectors.col(c.members[static_cast<std::size_t>(a)]);
    // Krein form v -> Im(conj(v)^T J v) on the eigenspace.
    const CMatrix H = std::complex<double>(0.0, -1.0) * (V.adjoint() * J.cast<std::complex<double>>() * V);
    const CMatrix Hh = 0.5 * (H + H.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> krein(Hh);
    int positive = 0;
    int negative = 0;
    for (Eigen::Index a = 0; a < krein.eigenvalues().size(); ++a) {
      const double s = krein.eigenvalues()(a);
      if (std::abs(s) < options.krein_tol) throw NumericalError("Krein-degenerate");
      (s > 0 ? positive : negative) += 1;
    }
    const double theta = std::arg(c.center) / kTwoPi;  // in (0, 1/2)
    total += positive * theta + negative * (1.0 - theta);
    radius += static_cast<double>(size) * eig_err / kTwoPi;
  }
  return cohomology::make_class(total, radius);
}

}  // namespace rotlab::sp

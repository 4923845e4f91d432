#include "rotlab/linalg.hpp"

#include <cmath>
#include <string>

#include "rotlab/error.hpp"

namespace rotlab::linalg {

Matrix standard_J(int n) {
  Matrix J = Matrix::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -Matrix::Identity(n, n);
  J.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return J;
}

Matrix expm(const Matrix& A) {
  const double norm = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix B = A / std::ldexp(1.0, squarings);

  Matrix result = Matrix::Identity(A.rows(), A.cols());
  Matrix term = result;
  for (int k = 1; k <= 18; ++k) {
    term = (term * B) / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

PolarFactors polar_decomposition(const Matrix& g, double tol, int max_steps) {
  if (g.rows() != g.cols()) throw InvalidArgument("polar_decomposition: matrix not square");
  Matrix X = g;
  for (int step = 1; step <= max_steps; ++step) {
    const Matrix Xinv = X.inverse();
    // Frobenius-norm scaling speeds up the early steps; drop it near convergence.
    double zeta = std::sqrt(Xinv.norm() / X.norm());
    if (std::abs(zeta - 1.0) < 1e-3) zeta = 1.0;
    const Matrix next = 0.5 * (zeta * X + Xinv.transpose() / zeta);
    const double change = (next - X).norm();
    X = next;
    if (change <= tol * X.norm()) {
      Matrix P = X.transpose() * g;
      P = 0.5 * (P + P.transpose()).eval();
      return PolarFactors{X, P, step};
    }
  }
  throw NumericalError("polar_decomposition: no convergence in " + std::to_string(max_steps) +
                       " steps");
}

Matrix symplectic_inverse(const Matrix& g) {
  const int n = static_cast<int>(g.rows() / 2);
  const Matrix J = standard_J(n);
  return -J * g.transpose() * J;
}

CMatrix to_complex(const Matrix& m) {
  const auto n = m.rows() / 2;
  CMatrix w(n, n);
  w.real() = m.topLeftCorner(n, n);
  w.imag() = m.bottomLeftCorner(n, n);
  return w;
}

Matrix from_complex(const CMatrix& w) {
  const auto n = w.rows();
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = w.real();
  m.topRightCorner(n, n) = -w.imag();
  m.bottomLeftCorner(n, n) = w.imag();
  m.bottomRightCorner(n, n) = w.real();
  return m;
}

std::complex<double> frame_determinant(const Matrix& frame) {
  const auto n = frame.cols();
  CMatrix z(n, n);
  z.real() = frame.topRows(n);
  z.imag() = frame.bottomRows(n);
  if (n == 1) return z(0, 0);
  if (n == 2) return z(0, 0) * z(1, 1) - z(0, 1) * z(1, 0);
  return z.partialPivLu().determinant();
}

Matrix orthonormal_frame(const Matrix& frame) {
  Eigen::HouseholderQR<Matrix> qr(frame);
  const auto cols = frame.cols();
  Matrix Q = qr.householderQ() * Matrix::Identity(frame.rows(), cols);
  const Matrix& R = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

Matrix rotation2(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

Matrix symplectic_direct_sum(const Matrix& g1, const Matrix& g2) {
  const auto a = g1.rows() / 2;
  const auto b = g2.rows() / 2;
  const auto n = a + b;
  Matrix out = Matrix::Zero(2 * n, 2 * n);
  // q-block indices: [0, a) and [a, n); p-block indices shift by n.
  auto place = [&](const Matrix& g, Eigen::Index off, Eigen::Index size) {
    out.block(off, off, size, size) = g.topLeftCorner(size, size);
    out.block(off, n + off, size, size) = g.topRightCorner(size, size);
    out.block(n + off, off, size, size) = g.bottomLeftCorner(size, size);
    out.block(n + off, n + off, size, size) = g.bottomRightCorner(size, size);
  };
  place(g1, 0, a);
  place(g2, a, b);
  return out;
}

double phase_step(std::complex<double> a, std::complex<double> b) {
  return std::arg(b * std::conj(a));
}

}  // namespace rotlab::linalg

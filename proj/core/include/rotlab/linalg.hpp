#pragma once

// Small dense kernels shared by the symplectic code. Coordinates are
// (q_1..q_n, p_1..p_n) and J = [[0, -I], [I, 0]] throughout; J acts as
// multiplication by i on z = q + i p.

#include <complex>

#include <Eigen/Dense>

namespace rotlab::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// The standard symplectic form on R^{2n}.
Matrix standard_J(int n);

/// exp(A) by scaling and squaring with a degree-18 Taylor kernel
/// (absolute error well below 1e-12 for the matrices used here).
Matrix expm(const Matrix& A);

struct PolarFactors {
  Matrix U;  // orthogonal
  Matrix P;  // symmetric positive definite
  int iterations = 0;
};

/// g = U P by the scaled Newton iteration X <- (z X + (z X)^{-T}) / 2.
/// Throws NumericalError after max_steps without reaching `tol`.
PolarFactors polar_decomposition(const Matrix& g, double tol = 1e-12, int max_steps = 200);

/// g^{-1} = -J g^T J, exact for symplectic g.
Matrix symplectic_inverse(const Matrix& g);

/// The complex n x n matrix X + iY of a complex-linear real 2n x 2n
/// matrix [[X, -Y], [Y, X]].
CMatrix to_complex(const Matrix& m);
/// Inverse of to_complex.
Matrix from_complex(const CMatrix& w);

/// det(X + iY) for a 2n x n frame [X; Y].
std::complex<double> frame_determinant(const Matrix& frame);

/// Orthonormal basis of the column span of `frame`, with the change of basis
/// of positive determinant (so frame_determinant keeps its phase).
Matrix orthonormal_frame(const Matrix& frame);

/// 2 x 2 rotation by theta (multiplication by e^{i theta} in the J convention).
Matrix rotation2(double theta);

/// Symplectic direct sum of g1 in Sp(2a) and g2 in Sp(2b), laid out in the
/// (q, p) block convention of Sp(2(a + b)).
Matrix symplectic_direct_sum(const Matrix& g1, const Matrix& g2);

/// Principal value of arg(b / a) in (-pi, pi].
double phase_step(std::complex<double> a, std::complex<double> b);

}  // namespace rotlab::linalg

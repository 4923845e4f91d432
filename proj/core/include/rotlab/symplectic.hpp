#pragma once

// Symplectic matrices in the (q, p) convention with J = [[0, -I], [I, 0]],
// their unitary parts, and the eigenvalue formula for the rotation number.

#include <complex>
#include <cstdint>
#include <string>

#include "rotlab/cohomology.hpp"
#include "rotlab/linalg.hpp"

namespace rotlab::sp {

using linalg::CMatrix;
using linalg::Matrix;
using cohomology::ClassValue;

inline constexpr double kSymplecticTol = 1e-9;

/// max |M^T J M - J|; throws InvalidArgument for non-square or odd sizes.
double symplectic_residual(const Matrix& M);

/// True iff M is 2n x 2n and max |M^T J M - J| <= tol.
bool check_symplectic(const Matrix& M, double tol = kSymplecticTol);

/// A 2n x 2n real matrix known to satisfy g^T J g = J within tolerance.
class SymplecticMatrix {
 public:
  /// Throws InvalidArgument unless `m` passes check_symplectic at `tol`.
  explicit SymplecticMatrix(Matrix m, double tol = kSymplecticTol);

  static SymplecticMatrix identity(int n);

  int half_dim() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }

  SymplecticMatrix inverse() const;
  SymplecticMatrix operator*(const SymplecticMatrix& other) const;

 private:
  struct Unchecked {};
  SymplecticMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}
  Matrix m_;
};

/// exp(J S) with S = scale * (X + X^T) / 2, X standard normal from a seeded
/// mt19937_64. Deterministic for fixed (n, seed, scale).
SymplecticMatrix random_symplectic(int n, std::uint64_t seed, double scale);

/// Orthogonal symplectic U = [[A, -B], [B, A]]; A + iB is unitary.
struct UnitaryBlock {
  Matrix A;
  Matrix B;

  Matrix orthogonal() const;
  CMatrix complex() const;
};

/// Unitary factor of the polar decomposition g = U P.
UnitaryBlock unitary_part(const SymplecticMatrix& g);

/// det_C(A + iB), a unit complex number.
std::complex<double> det_circle(const UnitaryBlock& u);

struct EigenOptions {
  double max_condition = 1e8;   // eigenvector-matrix condition number gate
  double krein_tol = 1e-8;      // minimum |Krein form| on unit-circle eigenvectors
  double unit_circle_tol = 1e-7;
  double cluster_tol = 1e-6;
};

/// Rotation number from the spectrum: every Krein-positive unit eigenvalue
/// e^{i theta} contributes theta / 2 pi, every negative real pair (or
/// eigenvalue -1 counted with half its multiplicity) contributes 1/2, and
/// everything else contributes 0. The error radius is the accumulated
/// eigenvalue uncertainty. Requires 2n <= 8 and a semisimple g; throws
/// NumericalError("semisimplicity check failed") or ("Krein-degenerate").
ClassValue eigenvalue_rotation_number(const SymplecticMatrix& g, const EigenOptions& options = {});

/// Whitespace-separated rows, one per line; dimension inferred.
Matrix read_matrix_file(const std::string& path);
Matrix parse_matrix(const std::string& text);

/// FNV-1a over the little-endian bytes of the entries, as 16 hex digits.
std::string matrix_hash(const Matrix& m);

}  // namespace rotlab::sp

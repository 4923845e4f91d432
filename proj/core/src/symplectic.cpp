#include "rotlab/symplectic.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <vector>

#include "rotlab/error.hpp"

namespace rotlab::sp {

double symplectic_residual(const Matrix& M) {
  if (M.rows() != M.cols()) throw InvalidArgument("matrix is not square");
  if (M.rows() == 0 || M.rows() % 2 != 0) {
    throw InvalidArgument("matrix dimension must be even and positive");
  }
  const Matrix J = linalg::standard_J(static_cast<int>(M.rows() / 2));
  return (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
}

bool check_symplectic(const Matrix& M, double tol) { return symplectic_residual(M) <= tol; }

SymplecticMatrix::SymplecticMatrix(Matrix m, double tol) : m_(std::move(m)) {
  const double res = symplectic_residual(m_);
  if (!(res <= tol)) {
    std::ostringstream msg;
    msg << "not symplectic: max |g^T J g - J| = " << res << " > " << tol;
    throw InvalidArgument(msg.str());
  }
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
  if (n < 1) throw InvalidArgument("identity: n must be >= 1");
  return SymplecticMatrix(Matrix::Identity(2 * n, 2 * n), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  return SymplecticMatrix(linalg::symplectic_inverse(m_), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& other) const {
  if (other.m_.rows() != m_.rows()) throw InvalidArgument("dimension mismatch in product");
  return SymplecticMatrix(m_ * other.m_, Unchecked{});
}

SymplecticMatrix random_symplectic(int n, std::uint64_t seed, double scale) {
  if (n < 1) throw InvalidArgument("random_symplectic: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix X(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = normal(rng);
  }
  const Matrix S = scale * 0.5 * (X + X.transpose());
  return SymplecticMatrix(linalg::expm(linalg::standard_J(n) * S));
}

Matrix UnitaryBlock::orthogonal() const {
  CMatrix w(A.rows(), A.cols());
  w.real() = A;
  w.imag() = B;
  return linalg::from_complex(w);
}

CMatrix UnitaryBlock::complex() const {
  CMatrix w(A.rows(), A.cols());
  w.real() = A;
  w.imag() = B;
  return w;
}

UnitaryBlock unitary_part(const SymplecticMatrix& g) {
  const auto polar = linalg::polar_decomposition(g.matrix());
  const auto n = g.half_dim();
  return UnitaryBlock{polar.U.topLeftCorner(n, n), polar.U.bottomLeftCorner(n, n)};
}

std::complex<double> det_circle(const UnitaryBlock& u) { return u.complex().determinant(); }

Matrix parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw InvalidArgument("malformed matrix entry `" + tok + "`");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidArgument("empty matrix");
  const auto cols = rows.front().size();
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open matrix file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string matrix_hash(const Matrix& m) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint64_t bits) {
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(m.rows()));
  mix(static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) mix(std::bit_cast<std::uint64_t>(m(i, j)));
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace rotlab::sp

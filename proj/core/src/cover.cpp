#include "rotlab/cover.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rotlab/error.hpp"

namespace rotlab::sp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxPhaseStep = std::numbers::pi / 4.0;
constexpr int kMaxBisectionDepth = 48;

Matrix lagrangian_basis(int n) {
  Matrix L0 = Matrix::Zero(2 * n, n);
  L0.topRows(n) = Matrix::Identity(n, n);
  return L0;
}

struct PhaseTracker {
  const PathSegment& segment;
  const Matrix& frame;
  std::size_t& budget_used;

  std::complex<double> phase_at(double t) const {
    if (++budget_used > kSampleBudget) {
      throw NumericalError("path refinement exceeded " + std::to_string(kSampleBudget) +
                           " samples");
    }
    return linalg::frame_determinant(segment.at(t) * frame);
  }

  // Unwrapped phase change between (t0, z0) and (t1, z1), bisecting until
  // every step is below kMaxPhaseStep.
  double step(double t0, std::complex<double> z0, double t1, std::complex<double> z1,
              int depth) const {
    const double d = linalg::phase_step(z0, z1);
    if (std::abs(d) < kMaxPhaseStep) return d;
    if (depth >= kMaxBisectionDepth) {
      throw NumericalError("path refinement: phase jump does not resolve under bisection");
    }
    const double tm = 0.5 * (t0 + t1);
    const auto zm = phase_at(tm);
    return step(t0, z0, tm, zm, depth + 1) + step(tm, zm, t1, z1, depth + 1);
  }
};

double bump_average(const std::vector<double>& s, Integer lo, Integer hi) {
  double num = 0.0;
  double den = 0.0;
  const double len = static_cast<double>(hi - lo);
  for (Integer j = lo; j < hi; ++j) {
    const double t = (static_cast<double>(j - lo) + 0.5) / len;
    const double w = std::exp(-1.0 / (t * (1.0 - t)));
    num += w * (s[static_cast<std::size_t>(j + 1)] - s[static_cast<std::size_t>(j)]);
    den += w;
  }
  return num / den;
}

}  // namespace

// ---- GeodesicPath ---------------------------------------------------------

GeodesicPath::GeodesicPath(CMatrix unitary_basis, linalg::Vector phases, Matrix spd_basis,
                           linalg::Vector log_stretch, Matrix endpoint)
    : unitary_basis_(std::move(unitary_basis)),
      phases_(std::move(phases)),
      spd_basis_(std::move(spd_basis)),
      log_stretch_(std::move(log_stretch)),
      endpoint_(std::move(endpoint)) {}

namespace {

struct PolarData {
  CMatrix Q;
  linalg::Vector phases;
  Matrix V;
  linalg::Vector mu;
  Matrix U;
  Matrix P;
};

PolarData polar_data(const SymplecticMatrix& g) {
  const auto polar = linalg::polar_decomposition(g.matrix());
  PolarData d;
  d.U = polar.U;
  d.P = polar.P;
  // A + iB is normal, so its complex Schur form is diagonal up to rounding.
  Eigen::ComplexSchur<CMatrix> schur(linalg::to_complex(polar.U));
  d.Q = schur.matrixU();
  d.phases.resize(d.Q.cols());
  for (Eigen::Index j = 0; j < d.Q.cols(); ++j) d.phases(j) = std::arg(schur.matrixT()(j, j));
  Eigen::SelfAdjointEigenSolver<Matrix> spd(polar.P);
  d.V = spd.eigenvectors();
  d.mu = spd.eigenvalues().array().log().matrix();
  return d;
}

}  // namespace

GeodesicPath GeodesicPath::polar(const SymplecticMatrix& g) {
  PolarData d = polar_data(g);
  return GeodesicPath(std::move(d.Q), std::move(d.phases), std::move(d.V), std::move(d.mu),
                      g.matrix());
}

GeodesicPath GeodesicPath::unitary_leg(const SymplecticMatrix& g) {
  PolarData d = polar_data(g);
  const auto dim = g.matrix().rows();
  return GeodesicPath(std::move(d.Q), std::move(d.phases), Matrix::Identity(dim, dim),
                      linalg::Vector::Zero(dim), std::move(d.U));
}

GeodesicPath GeodesicPath::stretch_leg(const SymplecticMatrix& g) {
  PolarData d = polar_data(g);
  const int n = g.half_dim();
  return GeodesicPath(CMatrix::Identity(n, n), linalg::Vector::Zero(n), std::move(d.V),
                      std::move(d.mu), std::move(d.P));
}

GeodesicPath GeodesicPath::full_loop(int n) {
  if (n < 1) throw InvalidArgument("full_loop: n must be >= 1");
  linalg::Vector phases = linalg::Vector::Zero(n);
  phases(0) = kTwoPi;
  return GeodesicPath(CMatrix::Identity(n, n), std::move(phases), Matrix::Identity(2 * n, 2 * n),
                      linalg::Vector::Zero(2 * n), Matrix::Identity(2 * n, 2 * n));
}

Matrix GeodesicPath::at(double t) const {
  const auto dim = endpoint_.rows();
  if (t <= 0.0) return Matrix::Identity(dim, dim);
  if (t >= 1.0) return endpoint_;
  linalg::CVector rot(phases_.size());
  for (Eigen::Index j = 0; j < phases_.size(); ++j) {
    rot(j) = std::polar(1.0, t * phases_(j));
  }
  const CMatrix Ut = unitary_basis_ * rot.asDiagonal() * unitary_basis_.adjoint();
  const Matrix Pt =
      spd_basis_ * (t * log_stretch_).array().exp().matrix().asDiagonal() * spd_basis_.transpose();
  const Matrix gt = linalg::from_complex(Ut) * Pt;
  return inverted_ ? linalg::symplectic_inverse(gt) : gt;
}

GeodesicPath GeodesicPath::inverse() const {
  GeodesicPath out = *this;
  out.inverted_ = !inverted_;
  out.endpoint_ = linalg::symplectic_inverse(endpoint_);
  return out;
}

// ---- CoverElement ---------------------------------------------------------

CoverElement CoverElement::identity(int n) {
  if (n < 1) throw InvalidArgument("identity: n must be >= 1");
  CoverElement e;
  e.n_ = n;
  e.endpoint_ = Matrix::Identity(2 * n, 2 * n);
  e.frame_ = lagrangian_basis(n);
  return e;
}

CoverElement CoverElement::from_path(std::shared_ptr<const GeodesicPath> path, int samples) {
  if (samples < 1) throw InvalidArgument("from_path: samples must be >= 1");
  const int n = path->half_dim();
  CoverElement e = identity(n);
  const Matrix L0 = lagrangian_basis(n);

  PathSegment seg{path, Matrix::Identity(2 * n, 2 * n), {}, {}};
  std::vector<double> knots;
  std::vector<std::complex<double>> phases;
  for (int k = 0; k <= samples; ++k) {
    const double t = static_cast<double>(k) / samples;
    knots.push_back(t);
    phases.push_back(linalg::frame_determinant(path->at(t) * L0));
  }
  // Insert midpoints until every phase step is below the threshold.
  double turns = 0.0;
  std::size_t i = 1;
  while (i < knots.size()) {
    const double d = linalg::phase_step(phases[i - 1], phases[i]);
    if (std::abs(d) < kMaxPhaseStep) {
      turns += d;
      ++i;
      continue;
    }
    if (knots.size() >= kSampleBudget) {
      throw NumericalError("canonical path refinement exceeded the sample budget");
    }
    const double tm = 0.5 * (knots[i - 1] + knots[i]);
    knots.insert(knots.begin() + static_cast<std::ptrdiff_t>(i), tm);
    phases.insert(phases.begin() + static_cast<std::ptrdiff_t>(i),
                  linalg::frame_determinant(path->at(tm) * L0));
  }
  seg.knots = std::move(knots);
  seg.knot_values.reserve(seg.knots.size());
  for (double t : seg.knots) seg.knot_values.push_back(path->at(t));

  e.endpoint_ = path->endpoint();
  e.frame_ = linalg::orthonormal_frame(e.endpoint_ * L0);
  e.theta_ = turns / kTwoPi;
  e.segments_.push_back(std::move(seg));
  return e;
}

CoverElement CoverElement::shifted(Integer m) const {
  CoverElement out = *this;
  out.deck_ += m;
  return out;
}

std::vector<Matrix> CoverElement::samples() const {
  std::vector<Matrix> out{Matrix::Identity(2 * n_, 2 * n_)};
  for (const auto& seg : segments_) {
    for (std::size_t k = 1; k < seg.knot_values.size(); ++k) out.push_back(seg.knot_values[k]);
  }
  return out;
}

Winding wind(const CoverElement& a, const Matrix& frame) {
  Winding w;
  double total = 0.0;
  for (const auto& seg : a.segments()) {
    PhaseTracker tracker{seg, frame, w.samples_used};
    auto z_prev = linalg::frame_determinant(seg.knot_values.front() * frame);
    for (std::size_t k = 1; k < seg.knots.size(); ++k) {
      const auto z = linalg::frame_determinant(seg.knot_values[k] * frame);
      total += tracker.step(seg.knots[k - 1], z_prev, seg.knots[k], z, 0);
      z_prev = z;
    }
    w.samples_used += seg.knots.size();
  }
  w.turns = total / kTwoPi;
  w.frame_end = linalg::orthonormal_frame(a.endpoint() * frame);
  return w;
}

CoverElement cover_multiply(const CoverElement& a, const CoverElement& b) {
  if (a.n_ != b.n_) throw InvalidArgument("cover_multiply: dimension mismatch");
  CoverElement out;
  out.n_ = a.n_;
  out.segments_ = b.segments_;
  for (const auto& seg : a.segments_) {
    PathSegment moved = seg;
    moved.right = seg.right * b.endpoint_;
    for (auto& v : moved.knot_values) v = v * b.endpoint_;
    out.segments_.push_back(std::move(moved));
  }
  const Winding w = wind(a, b.frame_);
  out.endpoint_ = a.endpoint_ * b.endpoint_;
  out.frame_ = w.frame_end;
  out.theta_ = b.theta_ + w.turns;
  out.deck_ = a.deck_ + b.deck_;
  return out;
}

CoverElement cover_inverse(const CoverElement& a) {
  // a = p_k ... p_1 with p_i the primitive element of segment i.
  CoverElement acc = CoverElement::identity(a.n_);
  for (auto it = a.segments_.rbegin(); it != a.segments_.rend(); ++it) {
    auto inv_path = std::make_shared<const GeodesicPath>(it->path->inverse());
    const auto samples = static_cast<int>(std::max<std::size_t>(it->knots.size() - 1, 1));
    acc = cover_multiply(CoverElement::from_path(std::move(inv_path), samples), acc);
  }
  // Keep the exact symplectic inverse as the endpoint.
  acc.endpoint_ = linalg::symplectic_inverse(a.endpoint_);
  acc.deck_ = -a.deck_;
  return acc;
}

CoverElement cover_power(const CoverElement& a, Integer k) {
  const CoverElement base = k >= 0 ? a : cover_inverse(a);
  CoverElement acc = CoverElement::identity(a.half_dim());
  for (Integer i = 0; i < (k >= 0 ? k : -k); ++i) acc = cover_multiply(base, acc);
  return acc;
}

double polar_theta(const CoverElement& a) {
  const auto samples = a.samples();
  const int n = a.half_dim();
  auto phase = [n](const Matrix& g) {
    // det_C of the unitary part has the phase of det((A + D) + i(C - B)).
    CMatrix w(n, n);
    w.real() = g.topLeftCorner(n, n) + g.bottomRightCorner(n, n);
    w.imag() = g.bottomLeftCorner(n, n) - g.topRightCorner(n, n);
    return w.determinant();
  };
  double total = 0.0;
  auto prev = phase(samples.front());
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const auto z = phase(samples[k]);
    const double d = linalg::phase_step(prev, z);
    if (std::abs(d) >= std::numbers::pi / 2.0) {
      throw NumericalError("polar_theta: samples too coarse for the unitary-part phase");
    }
    total += d;
    prev = z;
  }
  return total / kTwoPi;
}

// ---- PowerSequence --------------------------------------------------------

PowerSequence::PowerSequence(const CoverElement& a)
    : a_(a.shifted(-a.deck_offset())),
      a_inv_(cover_inverse(a_)),
      positive_{0.0},
      negative_{0.0},
      frame_pos_(CoverElement::identity(a.half_dim()).frame()),
      frame_neg_(frame_pos_),
      deck_(a.deck_offset()) {}

void PowerSequence::extend(std::vector<double>& values, Matrix& frame, const CoverElement& step,
                           Integer count) {
  while (static_cast<Integer>(values.size()) <= count) {
    const Winding w = wind(step, frame);
    values.push_back(values.back() + w.turns);
    frame = w.frame_end;
  }
}

void PowerSequence::reserve(Integer max_abs_power) {
  extend(positive_, frame_pos_, a_, max_abs_power);
  extend(negative_, frame_neg_, a_inv_, max_abs_power);
}

double PowerSequence::path_theta(Integer m) {
  if (m >= 0) {
    extend(positive_, frame_pos_, a_, m);
    return positive_[static_cast<std::size_t>(m)];
  }
  extend(negative_, frame_neg_, a_inv_, -m);
  return negative_[static_cast<std::size_t>(-m)];
}

double PowerSequence::eta(Integer m) {
  return path_theta(m) + static_cast<double>(m) * static_cast<double>(deck_);
}

// ---- homogenization -------------------------------------------------------

TranslationEstimate homogenize_sequence(const std::vector<double>& s) {
  if (s.size() < 3 || s.size() % 2 == 0) {
    throw InvalidArgument("homogenize_sequence: need s_0..s_2K with K >= 1");
  }
  const auto K = static_cast<Integer>((s.size() - 1) / 2);
  const double kd = static_cast<double>(K);
  TranslationEstimate est;
  est.depth = K;
  est.plain = (s[static_cast<std::size_t>(K)] - s[0]) / kd;
  est.two_point = (s[static_cast<std::size_t>(2 * K)] - s[static_cast<std::size_t>(K)]) / kd;

  double defect = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; i + j < s.size(); ++j) {
      defect = std::max(defect, std::abs(s[i + j] - s[i] - s[j] + s[0]));
    }
  }
  est.defect = defect;

  // Smooth bump weights make increment averages converge fast for
  // quasi-periodic increments. A decaying transient shows up as a gap
  // between the two half-range averages; then only the second half is used.
  const double full = bump_average(s, 0, 2 * K);
  const double first = bump_average(s, 0, K);
  const double second = bump_average(s, K, 2 * K);
  est.weighted = std::abs(first - second) > 4.0 * std::abs(full - second) ? second : full;

  const double mid = 0.5 * (est.plain + est.two_point);
  est.error_radius = 0.5 * std::abs(est.plain - est.two_point) + defect / kd;
  est.value = std::abs(est.weighted - mid) <= est.error_radius ? est.weighted : mid;
  return est;
}

TranslationEstimate translation_number_sp(PowerSequence& powers, Integer stride, Integer depth) {
  if (depth < 1) throw InvalidArgument("translation_number_sp: k_max must be >= 1");
  if (stride == 0) return TranslationEstimate{};
  std::vector<double> s(static_cast<std::size_t>(2 * depth + 1));
  for (Integer j = 0; j <= 2 * depth; ++j) {
    s[static_cast<std::size_t>(j)] = powers.path_theta(stride * j);
  }
  TranslationEstimate est = homogenize_sequence(s);
  const double deck = static_cast<double>(stride) * static_cast<double>(powers.deck_offset());
  est.value += deck;
  est.plain += deck;
  est.two_point += deck;
  est.weighted += deck;
  return est;
}

TranslationEstimate translation_number_sp(const CoverElement& a, Integer k_max) {
  PowerSequence powers(a);
  return translation_number_sp(powers, 1, k_max);
}

}  // namespace rotlab::sp

namespace rotlab::sp {

CoverElement canonical_path(const SymplecticMatrix& g, int samples, PathOrder order) {
  if (order == PathOrder::UnitaryThenStretch) {
    return CoverElement::from_path(std::make_shared<const GeodesicPath>(GeodesicPath::polar(g)),
                                   samples);
  }
  const auto stretch = CoverElement::from_path(
      std::make_shared<const GeodesicPath>(GeodesicPath::stretch_leg(g)), samples);
  const auto unitary = CoverElement::from_path(
      std::make_shared<const GeodesicPath>(GeodesicPath::unitary_leg(g)), samples);
  return cover_multiply(unitary, stretch);
}

CoverElement deck_generator(int n) {
  return CoverElement::from_path(std::make_shared<const GeodesicPath>(GeodesicPath::full_loop(n)));
}

}  // namespace rotlab::sp

#include "ergocount/geometry.hpp"

#include <cmath>
#include <sstream>

namespace ergo {

namespace {

constexpr double kDetTolerance = 1e-9;
constexpr int kRenormInterval = 50;

void require_split(int m, int n) {
  if (m < 1 || n < 1)
    fail(ErrorCode::InvalidArgument, "block sizes m and n must be >= 1");
}

}  // namespace

double ball_volume(int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "ball_volume requires k >= 1");
  return std::pow(M_PI, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double sphere_area(int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "sphere_area requires k >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * k) / std::tgamma(0.5 * k);
}

SplitVector::SplitVector(Eigen::VectorXd coords, int m, int n)
    : coords_(std::move(coords)), m_(m), n_(n) {
  require_split(m, n);
  if (coords_.size() != m_ + n_)
    fail(ErrorCode::InvalidArgument, "vector size does not match m + n");
}

double SplitVector::x_norm() const { return std::sqrt(x_norm_sq()); }
double SplitVector::y_norm() const { return std::sqrt(y_norm_sq()); }

UnimodularBasis::UnimodularBasis(Eigen::MatrixXd columns, int m, int n)
    : cols_(std::move(columns)), m_(m), n_(n) {
  require_split(m, n);
  if (cols_.rows() != m_ + n_ || cols_.cols() != m_ + n_)
    fail(ErrorCode::InvalidArgument, "basis must be a d x d matrix, d = m + n");
  double det = cols_.determinant();
  if (det < 0) {
    cols_.col(cols_.cols() - 1) *= -1.0;
    det = -det;
  }
  if (!(std::abs(det - 1.0) <= kDetTolerance)) {
    std::ostringstream msg;
    msg << "basis determinant " << det << " is not 1 within 1e-9";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

UnimodularBasis::UnimodularBasis(Unchecked, Eigen::MatrixXd columns, int m,
                                 int n, int flow_steps)
    : cols_(std::move(columns)), m_(m), n_(n), flow_steps_(flow_steps) {}

UnimodularBasis UnimodularBasis::identity(int m, int n) {
  require_split(m, n);
  return UnimodularBasis(Eigen::MatrixXd::Identity(m + n, m + n), m, n);
}

SplitVector UnimodularBasis::point(const Eigen::VectorXi& k) const {
  if (k.size() != d())
    fail(ErrorCode::InvalidArgument, "coefficient vector size mismatch");
  return SplitVector(cols_ * k.cast<double>(), m_, n_);
}

UnimodularBasis apply_flow(const UnimodularBasis& basis, double t) {
  const int m = basis.m();
  const int n = basis.n();
  const int d = m + n;
  const double sx = std::exp(static_cast<double>(n) / m * t);
  const double sy = std::exp(-t);

  Eigen::MatrixXd cols = basis.columns();
  cols.topRows(m) *= sx;
  cols.bottomRows(n) *= sy;

  int steps = basis.flow_steps_ + 1;
  if (steps >= kRenormInterval) {
    double det = cols.determinant();
    if (det < 0) {
      cols.col(d - 1) *= -1.0;
      det = -det;
    }
    if (det > 0 && std::isfinite(det))
      cols *= std::pow(det, -1.0 / d);
    steps = 0;
  }
  return UnimodularBasis(UnimodularBasis::Unchecked{}, std::move(cols), m, n,
                         steps);
}

AffineLattice apply_flow(const AffineLattice& lattice, double t) {
  // The offset is stored in basis coefficients, which a linear map leaves
  // unchanged: g(B(k + c)) = (gB)(k + c).
  return AffineLattice(apply_flow(lattice.basis(), t),
                       lattice.offset_coeffs());
}

SplitVector apply_flow(const SplitVector& v, double t) {
  const int m = v.m();
  const int n = v.n();
  Eigen::VectorXd coords = v.coords();
  coords.head(m) *= std::exp(static_cast<double>(n) / m * t);
  coords.tail(n) *= std::exp(-t);
  return SplitVector(std::move(coords), m, n);
}

UnimodularBasis shear_matrix(const Eigen::MatrixXd& A, int m, int n) {
  require_split(m, n);
  if (A.rows() != m || A.cols() != n)
    fail(ErrorCode::InvalidArgument, "shear parameter must be m x n");
  if (!A.allFinite())
    fail(ErrorCode::InvalidArgument, "shear parameter must be finite");
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(m + n, m + n);
  g.topRightCorner(m, n) = -A;
  return UnimodularBasis(std::move(g), m, n);
}

HDecomposition decompose(const Eigen::MatrixXd& g, int m, int n) {
  require_split(m, n);
  const int d = m + n;
  if (g.rows() != d || g.cols() != d)
    fail(ErrorCode::InvalidArgument, "matrix must be d x d, d = m + n");
  if (std::abs(std::abs(g.determinant()) - 1.0) > 1e-6)
    fail(ErrorCode::InvalidArgument, "matrix must be unimodular");

  const Eigen::MatrixXd beta = g.topLeftCorner(m, m);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(beta);
  if (!lu.isInvertible())
    fail(ErrorCode::InvalidArgument,
         "upper-left m x m block is singular; no shear decomposition exists "
         "(the excluded set has measure zero)");

  const Eigen::MatrixXd alpha = g.topRightCorner(m, n);
  const Eigen::MatrixXd gamma = g.bottomLeftCorner(n, m);
  const Eigen::MatrixXd delta = g.bottomRightCorner(n, n);
  const Eigen::MatrixXd beta_inv_alpha = lu.solve(alpha);

  HDecomposition h;
  h.B = beta;
  h.C = gamma;
  h.A = -beta_inv_alpha;
  h.D = delta - gamma * beta_inv_alpha;
  return h;
}

Eigen::MatrixXd recompose(const HDecomposition& h) {
  const int m = static_cast<int>(h.B.rows());
  const int n = static_cast<int>(h.D.rows());
  const int d = m + n;
  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(d, d);
  lower.topLeftCorner(m, m) = h.B;
  lower.bottomLeftCorner(n, m) = h.C;
  lower.bottomRightCorner(n, n) = h.D;
  Eigen::MatrixXd shear = Eigen::MatrixXd::Identity(d, d);
  shear.topRightCorner(m, n) = -h.A;
  return lower * shear;
}

AffineLattice::AffineLattice(UnimodularBasis basis)
    : basis_(std::move(basis)),
      offset_(Eigen::VectorXd::Zero(basis_.d())) {}

AffineLattice::AffineLattice(UnimodularBasis basis,
                             Eigen::VectorXd offset_coeffs)
    : basis_(std::move(basis)), offset_(std::move(offset_coeffs)) {
  if (offset_.size() != basis_.d())
    fail(ErrorCode::InvalidArgument, "offset size does not match dimension");
  if (!offset_.allFinite())
    fail(ErrorCode::InvalidArgument, "offset must be finite");
  for (Eigen::Index i = 0; i < offset_.size(); ++i) {
    double c = offset_[i] - std::floor(offset_[i]);
    if (c >= 1.0) c = 0.0;  // floor rounding at the seam
    offset_[i] = c;
  }
}

}  // namespace ergo

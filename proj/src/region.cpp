#include "ergocount/region.hpp"

#include <cmath>

namespace ergo {

namespace {

// x^k for small non-negative integer k, by repeated multiplication; keeps
// boundary comparisons exact when x is exactly representable.
double powi(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

ThinningRegion::ThinningRegion(double b, int m, int n, double y_lo,
                               double y_hi, double theta)
    : b_(b), m_(m), n_(n), y_lo_(y_lo), y_hi_(y_hi), theta_(theta) {
  if (m < 1 || n < 1)
    fail(ErrorCode::InvalidArgument, "block sizes m and n must be >= 1");
  if (!(b > 0.0) || !std::isfinite(b))
    fail(ErrorCode::InvalidArgument, "region parameter b must be positive");
  if (!(y_lo >= 1.0))
    fail(ErrorCode::InvalidArgument, "shell lower bound must be >= 1");
  if (!(y_hi >= y_lo))
    fail(ErrorCode::InvalidArgument, "shell upper bound must be >= lower");
  if (theta != 0.0 && (m != 1 || n != 1))
    fail(ErrorCode::InvalidArgument, "rotation is only supported for d = 2");
}

bool ThinningRegion::contains(const SplitVector& v) const {
  if (v.m() != m_ || v.n() != n_)
    fail(ErrorCode::InvalidArgument, "vector split does not match region");

  double xsq, ysq;
  if (theta_ != 0.0) {
    // Rotate by -theta; d = 2 here.
    const double c = std::cos(theta_);
    const double s = std::sin(theta_);
    const double x = v.coords()[0];
    const double y = v.coords()[1];
    const double xr = x * c + y * s;
    const double yr = -x * s + y * c;
    xsq = xr * xr;
    ysq = yr * yr;
  } else {
    xsq = v.x_norm_sq();
    ysq = v.y_norm_sq();
  }

  // |x|^m |y|^n <= b compared with everything squared (avoids sqrt).
  if (powi(xsq, m_) * powi(ysq, n_) > b_ * b_) return false;
  return ysq >= y_lo_ * y_lo_ && ysq < y_hi_ * y_hi_;
}

double ThinningRegion::volume() const {
  if (y_hi_ == y_lo_) return 0.0;
  return b_ * ball_volume(m_) * sphere_area(n_) * std::log(y_hi_ / y_lo_);
}

double ThinningRegion::x_bound() const {
  return std::pow(b_ / powi(y_lo_, n_), 1.0 / m_);
}

Eigen::VectorXd ThinningRegion::bounding_box_half_widths() const {
  Eigen::VectorXd w(m_ + n_);
  const double wx = x_bound();
  if (theta_ == 0.0) {
    for (int i = 0; i < m_; ++i) w[i] = wx;
    for (int i = 0; i < n_; ++i) w[m_ + i] = y_hi_;
  } else {
    const double c = std::abs(std::cos(theta_));
    const double s = std::abs(std::sin(theta_));
    w[0] = c * wx + s * y_hi_;
    w[1] = s * wx + c * y_hi_;
  }
  return w;
}

ThinningRegion ThinningRegion::dyadic_block(double b, int m, int n, int j) {
  if (j < 0) fail(ErrorCode::InvalidArgument, "block index must be >= 0");
  return ThinningRegion(b, m, n, std::ldexp(1.0, j), std::ldexp(1.0, j + 1));
}

}  // namespace ergo

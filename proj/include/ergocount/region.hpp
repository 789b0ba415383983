#ifndef ERGOCOUNT_REGION_HPP
#define ERGOCOUNT_REGION_HPP

#include "ergocount/geometry.hpp"

namespace ergo {

// The hyperbolic shell { (x, y) : |x|^m |y|^n <= b, y_lo <= |y| < y_hi }
// with |.| the Euclidean block norms, optionally rotated by theta
// (rotation is only defined for m = n = 1).  Membership uses non-strict
// <= on the hyperbola and the half-open shell [y_lo, y_hi); both
// boundaries have measure zero.
class ThinningRegion {
public:
  ThinningRegion(double b, int m, int n, double y_lo, double y_hi,
                 double theta = 0.0);

  double b() const { return b_; }
  int m() const { return m_; }
  int n() const { return n_; }
  int d() const { return m_ + n_; }
  double y_lo() const { return y_lo_; }
  double y_hi() const { return y_hi_; }
  double theta() const { return theta_; }
  bool rotated() const { return theta_ != 0.0; }

  bool contains(const SplitVector& v) const;

  // Closed form b * B_m * C_n * log(y_hi / y_lo); rotation does not
  // change the volume.
  double volume() const;

  // Largest possible |x| block norm, (b / y_lo^n)^(1/m).
  double x_bound() const;

  // Half-widths of an axis-aligned ambient bounding box, rotation
  // included.
  Eigen::VectorXd bounding_box_half_widths() const;

  // The slab with y in [2^j, 2^(j+1)); block 0 is the base shell that the
  // diagonal flow translates along.
  static ThinningRegion dyadic_block(double b, int m, int n, int j);

private:
  double b_;
  int m_, n_;
  double y_lo_, y_hi_;
  double theta_;
};

// Indicator of a thinning region (1 inside, 0 outside).
struct IndicatorF {
  ThinningRegion region;
  double operator()(const SplitVector& v) const {
    return region.contains(v) ? 1.0 : 0.0;
  }
};

}  // namespace ergo

#endif

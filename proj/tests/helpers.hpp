#ifndef ERGO_TEST_HELPERS_HPP
#define ERGO_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <numeric>

#include "ergocount/geometry.hpp"
#include "ergocount/random.hpp"

namespace testutil {

inline Eigen::MatrixXd random_square_matrix(int d, ergo::SeededStream& s) {
  Eigen::MatrixXd M(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) = s.uniform(-1.0, 1.0);
  return M;
}

// Random covolume-1 basis: a well-conditioned random matrix scaled to
// determinant 1.
inline ergo::UnimodularBasis random_basis(int m, int n,
                                          ergo::SeededStream& s) {
  const int d = m + n;
  for (;;) {
    Eigen::MatrixXd M = random_square_matrix(d, s);
    double det = M.determinant();
    if (std::abs(det) < 0.1) continue;
    M /= std::pow(std::abs(det), 1.0 / d);
    if (M.determinant() < 0) M.col(d - 1) *= -1.0;
    return ergo::UnimodularBasis(M, m, n);
  }
}

// Membership written from the definition (sqrt norms, real powers), kept
// separate from the library predicate on purpose.
inline bool oracle_in_region(const Eigen::VectorXd& pt, int m, int n,
                             double b, double y_lo, double y_hi,
                             double theta = 0.0) {
  double xn, yn;
  if (theta != 0.0) {
    const double c = std::cos(theta), s = std::sin(theta);
    xn = std::abs(pt[0] * c + pt[1] * s);
    yn = std::abs(-pt[0] * s + pt[1] * c);
  } else {
    xn = pt.head(m).norm();
    yn = pt.tail(n).norm();
  }
  return std::pow(xn, m) * std::pow(yn, n) <= b && yn >= y_lo && yn < y_hi;
}

// Brute-force count over the fixed coefficient cube [-kmax, kmax]^d.  The
// caller is responsible for kmax being large enough; the standard bound
// is sum_j |inv(B)_ij| * w_j over the region's bounding widths.
inline int64_t oracle_count(const Eigen::MatrixXd& basis,
                            const Eigen::VectorXd& offset_coeffs, int m,
                            int n, double b, double y_lo, double y_hi,
                            int kmax, bool primitive = false,
                            double theta = 0.0) {
  const int d = m + n;
  Eigen::VectorXi k = Eigen::VectorXi::Constant(d, -kmax);
  int64_t count = 0;
  for (;;) {
    const Eigen::VectorXd pt = basis * (k.cast<double>() + offset_coeffs);
    if (oracle_in_region(pt, m, n, b, y_lo, y_hi, theta)) {
      bool keep = true;
      if (primitive) {
        int64_t g = 0;
        for (int i = 0; i < d; ++i)
          g = std::gcd(g, static_cast<int64_t>(std::abs(k[i])));
        keep = g == 1;
      }
      if (keep) ++count;
    }
    int axis = 0;
    while (axis < d && k[axis] == kmax) ++axis;
    if (axis == d) return count;
    k[axis] += 1;
    for (int i = 0; i < axis; ++i) k[i] = -kmax;
  }
}

// Coefficient cube radius sufficient for the region bounding box.
inline int oracle_kmax(const Eigen::MatrixXd& basis, int m, int n, double b,
                       double y_lo, double y_hi, double theta = 0.0) {
  const int d = m + n;
  const Eigen::MatrixXd inv = basis.inverse();
  Eigen::VectorXd w(d);
  const double wx = std::pow(b / std::pow(y_lo, n), 1.0 / m);
  if (theta == 0.0) {
    for (int i = 0; i < m; ++i) w[i] = wx;
    for (int i = 0; i < n; ++i) w[m + i] = y_hi;
  } else {
    w[0] = std::abs(std::cos(theta)) * wx + std::abs(std::sin(theta)) * y_hi;
    w[1] = std::abs(std::sin(theta)) * wx + std::abs(std::cos(theta)) * y_hi;
  }
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    worst = std::max(worst, (inv.cwiseAbs().row(i) * w).value() + 1.0);
  return static_cast<int>(std::ceil(worst)) + 1;
}

}  // namespace testutil

#endif

#include "ergocount/sampling.hpp"

#include <cmath>

namespace ergo {

FormSystem sample_form(int m, int n, bool affine, SeededStream& stream,
                       double b) {
  if (m < 1 || n < 1)
    fail(ErrorCode::InvalidArgument, "block sizes m and n must be >= 1");
  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = stream.uniform();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  if (affine)
    for (int i = 0; i < m; ++i) w[i] = stream.uniform();
  return FormSystem(std::move(A), std::move(w), b);
}

void sample_haar_x2_parameters(SeededStream& stream, double& x, double& y) {
  // Inverse CDF of the normalized x-marginal (3/pi) / sqrt(1 - x^2) on
  // [-1/2, 1/2]; the conditional for y is a/y^2 on [a, inf) with
  // a = sqrt(1 - x^2).
  x = std::sin(M_PI * (2.0 * stream.uniform() - 1.0) / 6.0);
  y = std::sqrt(1.0 - x * x) / (1.0 - stream.uniform());
}

UnimodularBasis sample_haar_x2(SeededStream& stream) {
  double x, y;
  sample_haar_x2_parameters(stream, x, y);
  const double s = std::sqrt(y);

  Eigen::MatrixXd cols(2, 2);
  cols << 1.0 / s, x / s,
          0.0,     y / s;

  const double phi = 2.0 * M_PI * stream.uniform();
  Eigen::MatrixXd rot(2, 2);
  rot << std::cos(phi), -std::sin(phi),
         std::sin(phi),  std::cos(phi);
  return UnimodularBasis(rot * cols, 1, 1);
}

AffineLattice sample_affine_offset(const UnimodularBasis& basis,
                                   SeededStream& stream) {
  Eigen::VectorXd coeffs(basis.d());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    coeffs[i] = stream.uniform();
  return AffineLattice(basis, std::move(coeffs));
}

}  // namespace ergo

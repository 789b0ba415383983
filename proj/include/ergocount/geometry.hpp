#ifndef ERGOCOUNT_GEOMETRY_HPP
#define ERGOCOUNT_GEOMETRY_HPP

#include <Eigen/Dense>

#include "ergocount/errors.hpp"

namespace ergo {

class UnimodularBasis;
UnimodularBasis reduce_basis(const UnimodularBasis& basis, double delta);

// Volume of the unit k-ball, pi^(k/2) / Gamma(k/2 + 1).
double ball_volume(int k);

// Surface area of the unit sphere S^(k-1) in R^k, 2 pi^(k/2) / Gamma(k/2).
double sphere_area(int k);

// A vector of R^d split into an x-block of size m and a y-block of size n,
// d = m + n.  Norms are Euclidean norms of the blocks.
class SplitVector {
public:
  SplitVector(Eigen::VectorXd coords, int m, int n);

  const Eigen::VectorXd& coords() const { return coords_; }
  int m() const { return m_; }
  int n() const { return n_; }
  int d() const { return m_ + n_; }

  double x_norm_sq() const { return coords_.head(m_).squaredNorm(); }
  double y_norm_sq() const { return coords_.tail(n_).squaredNorm(); }
  double x_norm() const;
  double y_norm() const;

private:
  Eigen::VectorXd coords_;
  int m_, n_;
};

// Basis of a covolume-1 lattice, stored as column vectors with the same
// (m, n) block split as the ambient vectors.  The determinant is
// normalized to +1 (a negative-determinant input has its last column
// negated, which does not change the lattice) and is validated to 1e-9 on
// construction.  Immutable after construction.
class UnimodularBasis {
public:
  UnimodularBasis(Eigen::MatrixXd columns, int m, int n);

  static UnimodularBasis identity(int m, int n);

  const Eigen::MatrixXd& columns() const { return cols_; }
  int m() const { return m_; }
  int n() const { return n_; }
  int d() const { return m_ + n_; }
  double determinant() const { return cols_.determinant(); }

  // Lattice point with integer coefficient vector k.
  SplitVector point(const Eigen::VectorXi& k) const;

private:
  friend UnimodularBasis apply_flow(const UnimodularBasis&, double);
  friend UnimodularBasis reduce_basis(const UnimodularBasis&, double);

  struct Unchecked {};
  UnimodularBasis(Unchecked, Eigen::MatrixXd columns, int m, int n,
                  int flow_steps);

  Eigen::MatrixXd cols_;
  int m_, n_;
  // Flow applications since the determinant was last renormalized; drift
  // is corrected multiplicatively every 50 steps.
  int flow_steps_ = 0;
};

// Translate of a unimodular lattice.  The offset is stored as basis
// coefficients reduced to [0, 1)^d, so the point set is
// { basis * (k + offset) : k integer }.  A zero offset is a plain lattice.
class AffineLattice {
public:
  explicit AffineLattice(UnimodularBasis basis);
  AffineLattice(UnimodularBasis basis, Eigen::VectorXd offset_coeffs);

  const UnimodularBasis& basis() const { return basis_; }
  const Eigen::VectorXd& offset_coeffs() const { return offset_; }
  bool is_translate() const { return !offset_.isZero(0.0); }
  int m() const { return basis_.m(); }
  int n() const { return basis_.n(); }
  int d() const { return basis_.d(); }

private:
  UnimodularBasis basis_;
  Eigen::VectorXd offset_;
};

// Diagonal flow g_t = diag(e^(n/m * t) I_m, e^(-t) I_n).  Scales every
// column's x-block by e^(n/m * t) and y-block by e^(-t); the determinant
// is preserved.
UnimodularBasis apply_flow(const UnimodularBasis& basis, double t);
AffineLattice apply_flow(const AffineLattice& lattice, double t);
SplitVector apply_flow(const SplitVector& v, double t);

// Upper-triangular shear [[I_m, -A], [0, I_n]] applied to the standard
// lattice; determinant exactly 1.  A must be m x n with finite entries.
UnimodularBasis shear_matrix(const Eigen::MatrixXd& A, int m, int n);

// Block decomposition g = [[B, 0], [C, D]] * shear(A).  B is the
// upper-left m x m block of g; the decomposition exists and is unique
// exactly when that block is invertible.
struct HDecomposition {
  Eigen::MatrixXd B;  // m x m, invertible
  Eigen::MatrixXd C;  // n x m
  Eigen::MatrixXd D;  // n x n
  Eigen::MatrixXd A;  // m x n shear parameter
};

HDecomposition decompose(const Eigen::MatrixXd& g, int m, int n);
Eigen::MatrixXd recompose(const HDecomposition& h);

}  // namespace ergo

#endif

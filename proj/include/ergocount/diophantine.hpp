#ifndef ERGOCOUNT_DIOPHANTINE_HPP
#define ERGOCOUNT_DIOPHANTINE_HPP

#include <cstdint>
#include <vector>

#include "ergocount/counting.hpp"
#include "ergocount/geometry.hpp"

namespace ergo {

// System of m linear forms in n variables with approximation quality b:
// solutions are integer pairs (p, q) with |A q - p - w| <= b |q|^(-n/m).
// The shift w is zero for a homogeneous system and is stored reduced mod 1
// coordinatewise (an integer shift of w only relabels the solutions p).
struct FormSystem {
  Eigen::MatrixXd A;  // m x n
  Eigen::VectorXd w;  // m, canonical in [0,1)^m
  double b = 1.0;

  FormSystem(Eigen::MatrixXd A_, Eigen::VectorXd w_, double b_);
  static FormSystem homogeneous(Eigen::MatrixXd A_, double b_ = 1.0);

  int m() const { return static_cast<int>(A.rows()); }
  int n() const { return static_cast<int>(A.cols()); }
};

// Translation of the m-torus by alpha, with a shrinking target ball of
// radius b * n^(-1/m) around `target` (strict inequality).
struct ToralSystem {
  Eigen::VectorXd alpha;   // entries reduced to [0,1)
  Eigen::VectorXd target;  // entries reduced to [0,1)
  double b = 0.5;

  ToralSystem(Eigen::VectorXd alpha_, Eigen::VectorXd target_, double b_);

  int m() const { return static_cast<int>(alpha.size()); }
};

// Number of solution pairs (p, q), q scanned over the integer shell
// 1 <= |q| < T (both signs of q count).  T = 1 gives 0 (empty shell);
// T < 1 is rejected.  The hyperbola test uses non-strict <=.
int64_t count_forms(const FormSystem& system, double T,
                    int64_t candidate_budget = kDefaultCandidateBudget);

// Counts at every dyadic scale T = 2^j, j = 1..log2T_max, from a single
// q-scan (the per-q solution count does not depend on T).
std::vector<int64_t> count_forms_dyadic(
    const FormSystem& system, int log2T_max,
    int64_t candidate_budget = kDefaultCandidateBudget);

// The same count computed twice: directly, and as a lattice-point count
// of the sheared standard lattice (translated by (w, 0) in the affine
// case) over the shell with hyperbola parameter b^m.  The two routes must
// agree exactly.
struct FormsCrossCheck {
  int64_t direct;
  int64_t via_lattice;
};

FormsCrossCheck forms_lattice_crosscheck(
    const FormSystem& system, double T,
    int64_t candidate_budget = kDefaultCandidateBudget);

// Number of times 1 <= n <= N with |n alpha - target| mod Z^m strictly
// inside the shrinking ball.  n alpha is accumulated by repeated addition
// with renormalization to [0,1) each step.
int64_t count_toral(const ToralSystem& system, int64_t N);

// Cumulative toral hit counts at each grid value (grid must be strictly
// increasing, entries >= 1), from one pass.
std::vector<int64_t> count_toral_at(const ToralSystem& system,
                                    const std::vector<int64_t>& grid);

}  // namespace ergo

#endif

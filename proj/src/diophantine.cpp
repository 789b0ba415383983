#include "ergocount/diophantine.hpp"

#include <bit>
#include <cmath>

namespace ergo {

namespace {

Eigen::VectorXd reduce_mod_one(Eigen::VectorXd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double c = v[i] - std::floor(v[i]);
    if (c >= 1.0) c = 0.0;
    v[i] = c;
  }
  return v;
}

// Dyadic shell of an integer vector from its exact squared norm:
// 2^s <= |q| < 2^(s+1)  <=>  4^s <= |q|^2 < 4^(s+1).
int shell_index(int64_t norm_sq) {
  const int bits = 64 - std::countl_zero(static_cast<uint64_t>(norm_sq));
  return (bits - 1) / 2;
}

// Number of integer points p with |center - p| <= radius.
int64_t ball_point_count(const Eigen::VectorXd& center, double radius) {
  const int m = static_cast<int>(center.size());
  if (m == 1) {
    const int64_t hi = static_cast<int64_t>(std::floor(center[0] + radius));
    const int64_t lo = static_cast<int64_t>(std::ceil(center[0] - radius));
    return hi >= lo ? hi - lo + 1 : 0;
  }

  Eigen::VectorXi lo(m), hi(m), p(m);
  for (int i = 0; i < m; ++i) {
    lo[i] = static_cast<int>(std::ceil(center[i] - radius));
    hi[i] = static_cast<int>(std::floor(center[i] + radius));
    if (lo[i] > hi[i]) return 0;
  }
  const double r_sq = radius * radius;
  int64_t count = 0;
  p = lo;
  for (;;) {
    double dist_sq = 0.0;
    for (int i = 0; i < m; ++i) {
      const double diff = center[i] - p[i];
      dist_sq += diff * diff;
    }
    if (dist_sq <= r_sq) ++count;
    int axis = 0;
    while (axis < m && p[axis] == hi[axis]) ++axis;
    if (axis == m) return count;
    p[axis] += 1;
    for (int i = 0; i < axis; ++i) p[i] = lo[i];
  }
}

// Visits every q in the integer shell 1 <= |q| < T with its exact squared
// norm.  The scan order is lexicographic.
template <typename Visit>
void scan_q_shell(int n, double T, int64_t budget, Visit&& visit) {
  const int64_t q_max = static_cast<int64_t>(std::ceil(T)) - 1;
  if (q_max < 1) return;

  double candidates = 1.0;
  for (int i = 0; i < n; ++i) candidates *= 2.0 * q_max + 1.0;
  if (candidates > static_cast<double>(budget))
    fail(ErrorCode::BudgetExceeded,
         "q-shell larger than the candidate budget; use a smaller T");

  const double T_sq = T * T;
  if (n == 1) {
    Eigen::VectorXi q(1);
    for (int64_t v = -q_max; v <= q_max; ++v) {
      if (v == 0) continue;
      const int64_t nsq = v * v;
      if (static_cast<double>(nsq) >= T_sq) continue;
      q[0] = static_cast<int>(v);
      visit(q, nsq);
    }
    return;
  }

  Eigen::VectorXi q = Eigen::VectorXi::Constant(n, static_cast<int>(-q_max));
  for (;;) {
    int64_t nsq = 0;
    for (int i = 0; i < n; ++i)
      nsq += static_cast<int64_t>(q[i]) * q[i];
    if (nsq >= 1 && static_cast<double>(nsq) < T_sq) visit(q, nsq);
    int axis = n - 1;
    while (axis >= 0 && q[axis] == q_max) --axis;
    if (axis < 0) return;
    q[axis] += 1;
    for (int i = axis + 1; i < n; ++i) q[i] = static_cast<int>(-q_max);
  }
}

void validate_T(double T) {
  if (!(T >= 1.0) || !std::isfinite(T))
    fail(ErrorCode::InvalidArgument, "scale T must be >= 1");
}

}  // namespace

FormSystem::FormSystem(Eigen::MatrixXd A_, Eigen::VectorXd w_, double b_)
    : A(std::move(A_)), w(reduce_mod_one(std::move(w_))), b(b_) {
  if (A.rows() < 1 || A.cols() < 1)
    fail(ErrorCode::InvalidArgument, "form matrix must be m x n, m, n >= 1");
  if (w.size() != A.rows())
    fail(ErrorCode::InvalidArgument, "shift size must match the row count");
  if (!A.allFinite() || !w.allFinite())
    fail(ErrorCode::InvalidArgument, "form system entries must be finite");
  if (!(b > 0.0) || !std::isfinite(b))
    fail(ErrorCode::InvalidArgument, "approximation quality b must be > 0");
}

FormSystem FormSystem::homogeneous(Eigen::MatrixXd A_, double b_) {
  const Eigen::Index m = A_.rows();
  return FormSystem(std::move(A_), Eigen::VectorXd::Zero(m), b_);
}

ToralSystem::ToralSystem(Eigen::VectorXd alpha_, Eigen::VectorXd target_,
                         double b_)
    : alpha(reduce_mod_one(std::move(alpha_))),
      target(reduce_mod_one(std::move(target_))),
      b(b_) {
  if (alpha.size() < 1)
    fail(ErrorCode::InvalidArgument, "translation vector must be nonempty");
  if (target.size() != alpha.size())
    fail(ErrorCode::InvalidArgument, "target size must match alpha");
  if (!(b > 0.0) || !std::isfinite(b))
    fail(ErrorCode::InvalidArgument, "radius coefficient b must be > 0");
}

int64_t count_forms(const FormSystem& system, double T,
                    int64_t candidate_budget) {
  validate_T(T);
  const double exponent = -static_cast<double>(system.n()) / system.m();
  int64_t count = 0;
  scan_q_shell(system.n(), T, candidate_budget,
               [&](const Eigen::VectorXi& q, int64_t nsq) {
                 const double radius =
                     system.b * std::pow(std::sqrt(static_cast<double>(nsq)),
                                         exponent);
                 const Eigen::VectorXd center =
                     system.A * q.cast<double>() - system.w;
                 count += ball_point_count(center, radius);
               });
  return count;
}

std::vector<int64_t> count_forms_dyadic(const FormSystem& system,
                                        int log2T_max,
                                        int64_t candidate_budget) {
  if (log2T_max < 1)
    fail(ErrorCode::InvalidArgument, "log2T must be >= 1");
  const double T = std::ldexp(1.0, log2T_max);
  const double exponent = -static_cast<double>(system.n()) / system.m();

  std::vector<int64_t> shell_counts(log2T_max, 0);
  scan_q_shell(system.n(), T, candidate_budget,
               [&](const Eigen::VectorXi& q, int64_t nsq) {
                 const int shell = shell_index(nsq);
                 const double radius =
                     system.b * std::pow(std::sqrt(static_cast<double>(nsq)),
                                         exponent);
                 const Eigen::VectorXd center =
                     system.A * q.cast<double>() - system.w;
                 shell_counts[shell] += ball_point_count(center, radius);
               });

  std::vector<int64_t> cumulative(log2T_max);
  int64_t running = 0;
  for (int j = 0; j < log2T_max; ++j) {
    running += shell_counts[j];
    cumulative[j] = running;
  }
  return cumulative;
}

FormsCrossCheck forms_lattice_crosscheck(const FormSystem& system, double T,
                                         int64_t candidate_budget) {
  validate_T(T);
  const int m = system.m();
  const int n = system.n();

  CountRequest request{
      AffineLattice(shear_matrix(system.A, m, n)),
      ThinningRegion(std::pow(system.b, m), m, n, 1.0, T),
      /*primitive_only=*/false,
      CountStrategy::Auto,
      candidate_budget,
  };
  if (!system.w.isZero(0.0)) {
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(m + n);
    coeffs.head(m) = system.w;
    request.lattice =
        AffineLattice(shear_matrix(system.A, m, n), std::move(coeffs));
  }

  return FormsCrossCheck{count_forms(system, T, candidate_budget),
                         count_points(request)};
}

int64_t count_toral(const ToralSystem& system, int64_t N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
  return count_toral_at(system, {N}).back();
}

std::vector<int64_t> count_toral_at(const ToralSystem& system,
                                    const std::vector<int64_t>& grid) {
  if (grid.empty())
    fail(ErrorCode::InvalidArgument, "grid must be nonempty");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1]))
      fail(ErrorCode::InvalidArgument,
           "grid must be strictly increasing with entries >= 1");
  }

  const int m = system.m();
  const double inv_m = 1.0 / m;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(m);

  std::vector<int64_t> out(grid.size());
  size_t next = 0;
  int64_t hits = 0;
  for (int64_t step = 1; step <= grid.back(); ++step) {
    double dist_sq = 0.0;
    for (int i = 0; i < m; ++i) {
      acc[i] += system.alpha[i];
      if (acc[i] >= 1.0) acc[i] -= 1.0;
      double r = acc[i] - system.target[i];
      if (r > 0.5)
        r -= 1.0;
      else if (r < -0.5)
        r += 1.0;
      dist_sq += r * r;
    }
    const double threshold =
        system.b * std::pow(static_cast<double>(step), -inv_m);
    if (dist_sq < threshold * threshold) ++hits;
    while (next < grid.size() && grid[next] == step) out[next++] = hits;
  }
  return out;
}

}  // namespace ergo

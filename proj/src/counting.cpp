#include "ergocount/counting.hpp"

#include <cmath>
#include <numeric>

namespace ergo {

namespace {

// Distribute a small relative slack on the coefficient interval bound so
// rounding in the inverse-basis arithmetic can never exclude a valid
// candidate.
constexpr double kBoundSlack = 1e-9;

int64_t checked_box_size(const Eigen::VectorXi& lo, const Eigen::VectorXi& hi,
                         int64_t budget) {
  double size = 1.0;
  int64_t exact = 1;
  bool overflow = false;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    const double range = static_cast<double>(hi[i]) - lo[i] + 1.0;
    if (range <= 0) return 0;
    size *= range;
    if (!overflow) {
      int64_t r = static_cast<int64_t>(range);
      if (exact > budget / r + 1)
        overflow = true;
      else
        exact *= r;
    }
  }
  if (overflow || size > static_cast<double>(budget))
    fail(ErrorCode::BudgetExceeded,
         "enumeration too large, use dyadic strategy");
  return exact;
}

struct ScanBox {
  Eigen::VectorXi lo;
  Eigen::VectorXi hi;
};

// Integer coefficient ranges covering every lattice point inside the
// region's bounding box: |k_i + c_i| <= sum_j |inv(B)_ij| * w_j.
ScanBox coefficient_box(const Eigen::MatrixXd& basis,
                        const Eigen::VectorXd& offset,
                        const ThinningRegion& region) {
  const Eigen::MatrixXd inv = basis.inverse();
  const Eigen::VectorXd w = region.bounding_box_half_widths();
  const Eigen::VectorXd bound =
      (inv.cwiseAbs() * w).array() * (1.0 + kBoundSlack) + 1e-12;

  const int d = static_cast<int>(basis.rows());
  ScanBox box{Eigen::VectorXi(d), Eigen::VectorXi(d)};
  for (int i = 0; i < d; ++i) {
    box.lo[i] = static_cast<int>(std::ceil(-bound[i] - offset[i]));
    box.hi[i] = static_cast<int>(std::floor(bound[i] - offset[i]));
  }
  return box;
}

int64_t gcd_of_coefficients(const Eigen::VectorXi& k) {
  int64_t g = 0;
  for (Eigen::Index i = 0; i < k.size(); ++i)
    g = std::gcd(g, static_cast<int64_t>(std::abs(k[i])));
  return g;
}

// Odometer scan of the coefficient box.  The point is updated
// incrementally, one basis column per coefficient step.
template <typename Visit>
void scan_box(const Eigen::MatrixXd& basis, const Eigen::VectorXd& offset,
              const ScanBox& box, Visit&& visit) {
  const int d = static_cast<int>(basis.rows());
  for (int i = 0; i < d; ++i)
    if (box.lo[i] > box.hi[i]) return;

  Eigen::VectorXi k = box.lo;
  Eigen::VectorXd point =
      basis * (k.cast<double>() + offset);

  for (;;) {
    visit(k, point);
    int axis = 0;
    while (axis < d && k[axis] == box.hi[axis]) ++axis;
    if (axis == d) return;
    k[axis] += 1;
    if (axis == 0) {
      point += basis.col(0);
    } else {
      // Rollover: recompute from scratch so incremental error only ever
      // accumulates along the innermost axis.
      for (int i = 0; i < axis; ++i) k[i] = box.lo[i];
      point = basis * (k.cast<double>() + offset);
    }
  }
}

int64_t count_direct(const AffineLattice& lattice, const ThinningRegion& region,
                     bool primitive_only, int64_t budget) {
  const AffineLattice reduced = reduce_lattice(lattice);
  const ScanBox box = coefficient_box(reduced.basis().columns(),
                                      reduced.offset_coeffs(), region);
  checked_box_size(box.lo, box.hi, budget);

  const int m = region.m();
  const int n = region.n();
  int64_t count = 0;
  scan_box(reduced.basis().columns(), reduced.offset_coeffs(), box,
           [&](const Eigen::VectorXi& k, const Eigen::VectorXd& p) {
             if (!region.contains(SplitVector(p, m, n))) return;
             if (primitive_only && gcd_of_coefficients(k) != 1) return;
             ++count;
           });
  return count;
}

// Shell [y_lo, y_hi) splits into whole dyadic blocks when the ratio is a
// power of two; returns the exponent or -1.
int dyadic_exponent(const ThinningRegion& region) {
  if (region.y_hi() == region.y_lo()) return 0;
  const double ratio = region.y_hi() / region.y_lo();
  const int k = static_cast<int>(std::lround(std::log2(ratio)));
  if (k < 0) return -1;
  if (std::abs(ratio - std::ldexp(1.0, k)) > 1e-9 * std::ldexp(1.0, k))
    return -1;
  return k;
}

}  // namespace

UnimodularBasis reduce_basis(const UnimodularBasis& basis, double delta) {
  if (!(delta > 0.25 && delta < 1.0))
    fail(ErrorCode::InvalidArgument, "LLL parameter must be in (1/4, 1)");

  const int d = basis.d();
  Eigen::MatrixXd b = basis.columns();

  // Gram-Schmidt data, recomputed from scratch each round; d <= 6 in
  // practice so the cubic cost is irrelevant.
  Eigen::MatrixXd star(d, d);
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd norm_sq(d);
  auto gso = [&] {
    for (int i = 0; i < d; ++i) {
      star.col(i) = b.col(i);
      for (int j = 0; j < i; ++j) {
        mu(i, j) = b.col(i).dot(star.col(j)) / norm_sq[j];
        star.col(i) -= mu(i, j) * star.col(j);
      }
      norm_sq[i] = star.col(i).squaredNorm();
      if (!(norm_sq[i] > 0))
        fail(ErrorCode::InvalidArgument, "basis is numerically degenerate");
    }
  };

  gso();
  int k = 1;
  int guard = 0;
  while (k < d) {
    if (++guard > 100000)
      fail(ErrorCode::Internal, "LLL failed to converge");
    for (int j = k - 1; j >= 0; --j) {
      if (std::abs(mu(k, j)) > 0.5) {
        const double q = std::round(mu(k, j));
        b.col(k) -= q * b.col(j);
        gso();
      }
    }
    if (norm_sq[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * norm_sq[k - 1]) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      gso();
      k = std::max(k - 1, 1);
    }
  }

  if (b.determinant() < 0) b.col(d - 1) *= -1.0;
  return UnimodularBasis(UnimodularBasis::Unchecked{}, std::move(b),
                         basis.m(), basis.n(), 0);
}

AffineLattice rebase(const AffineLattice& lattice,
                     const UnimodularBasis& new_basis) {
  if (!lattice.is_translate()) return AffineLattice(new_basis);
  const Eigen::VectorXd ambient =
      lattice.basis().columns() * lattice.offset_coeffs();
  Eigen::VectorXd coeffs =
      new_basis.columns().partialPivLu().solve(ambient);
  return AffineLattice(new_basis, std::move(coeffs));
}

AffineLattice reduce_lattice(const AffineLattice& lattice) {
  return rebase(lattice, reduce_basis(lattice.basis()));
}

std::vector<SplitVector> enumerate_points(const AffineLattice& lattice,
                                          const ThinningRegion& region,
                                          int64_t candidate_budget) {
  if (lattice.m() != region.m() || lattice.n() != region.n())
    fail(ErrorCode::InvalidArgument, "lattice and region splits differ");

  const AffineLattice reduced = reduce_lattice(lattice);
  const ScanBox box = coefficient_box(reduced.basis().columns(),
                                      reduced.offset_coeffs(), region);
  checked_box_size(box.lo, box.hi, candidate_budget);

  const int m = region.m();
  const int n = region.n();
  std::vector<SplitVector> points;
  scan_box(reduced.basis().columns(), reduced.offset_coeffs(), box,
           [&](const Eigen::VectorXi&, const Eigen::VectorXd& p) {
             SplitVector v(p, m, n);
             if (region.contains(v)) points.push_back(std::move(v));
           });
  return points;
}

int64_t count_points(const CountRequest& request) {
  const AffineLattice& lattice = request.lattice;
  const ThinningRegion& region = request.region;
  if (lattice.m() != region.m() || lattice.n() != region.n())
    fail(ErrorCode::InvalidArgument, "lattice and region splits differ");
  if (request.primitive_only && lattice.is_translate())
    fail(ErrorCode::InvalidArgument,
         "primitive counting is undefined for lattice translates");

  const int blocks = dyadic_exponent(region);
  const bool dyadic_ok = blocks >= 0 && !region.rotated();

  CountStrategy strategy = request.strategy;
  if (strategy == CountStrategy::Auto)
    strategy = (dyadic_ok && blocks > 6) ? CountStrategy::Dyadic
                                         : CountStrategy::Direct;
  if (strategy == CountStrategy::Dyadic && !dyadic_ok)
    fail(ErrorCode::InvalidArgument,
         "dyadic strategy requires an unrotated shell spanning a power of 2");

  if (strategy == CountStrategy::Direct)
    return count_direct(lattice, region, request.primitive_only,
                        request.candidate_budget);

  // Flow the shell's blocks onto the base block one at a time; each step
  // re-reduces so the enumeration box stays O(b)-sized.
  const ThinningRegion base(region.b(), region.m(), region.n(), 1.0, 2.0);
  AffineLattice flowed =
      reduce_lattice(apply_flow(lattice, std::log(region.y_lo())));
  int64_t total = 0;
  for (int j = 0; j < blocks; ++j) {
    total += count_direct(flowed, base, request.primitive_only,
                          request.candidate_budget);
    if (j + 1 < blocks)
      flowed = reduce_lattice(apply_flow(flowed, std::log(2.0)));
  }
  return total;
}

std::vector<int64_t> birkhoff_counts(const AffineLattice& lattice, double b,
                                     int k, int64_t candidate_budget) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "block count must be >= 0");
  const ThinningRegion base(b, lattice.m(), lattice.n(), 1.0, 2.0);

  std::vector<int64_t> sums;
  sums.reserve(k);
  AffineLattice flowed = reduce_lattice(lattice);
  int64_t running = 0;
  for (int j = 0; j < k; ++j) {
    running += count_direct(flowed, base, false, candidate_budget);
    sums.push_back(running);
    if (j + 1 < k)
      flowed = reduce_lattice(apply_flow(flowed, std::log(2.0)));
  }
  return sums;
}

}  // namespace ergo

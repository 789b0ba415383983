#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ergocount/counting.hpp"
#include "helpers.hpp"

using namespace ergo;

namespace {

AffineLattice standard_lattice() {
  return AffineLattice(UnimodularBasis::identity(1, 1));
}

// Random integer unimodular column operations applied to a basis; the
// lattice is unchanged.
UnimodularBasis shuffle_basis(const UnimodularBasis& basis,
                              SeededStream& stream) {
  Eigen::MatrixXd cols = basis.columns();
  const int d = basis.d();
  for (int step = 0; step < 12; ++step) {
    const int i = static_cast<int>(stream.below(d));
    int j = static_cast<int>(stream.below(d));
    if (i == j) {
      cols.col(i) *= -1.0;
      continue;
    }
    const double mult = static_cast<double>(1 + stream.below(3));
    cols.col(i) += mult * cols.col(j);
  }
  if (cols.determinant() < 0) cols.col(d - 1) *= -1.0;
  return UnimodularBasis(cols, basis.m(), basis.n());
}

}  // namespace

TEST_CASE("reduction leaves reduced bases alone") {
  auto id = UnimodularBasis::identity(2, 1);
  CHECK((reduce_basis(id).columns() - id.columns()).norm() == 0.0);
}

TEST_CASE("reduction shortens a skewed planar basis") {
  Eigen::MatrixXd cols(2, 2);
  cols << 2.0, -1.0, 0.0, 0.5;
  auto reduced = reduce_basis(UnimodularBasis(cols, 1, 1));

  // The reduced basis realizes (0, 1) and (-1, 0.5) up to sign.
  auto has_column = [&](double x, double y) {
    for (int c = 0; c < 2; ++c) {
      const Eigen::Vector2d col = reduced.columns().col(c);
      if ((col - Eigen::Vector2d(x, y)).norm() < 1e-12 ||
          (col + Eigen::Vector2d(x, y)).norm() < 1e-12)
        return true;
    }
    return false;
  };
  CHECK(has_column(0.0, 1.0));
  CHECK(has_column(-1.0, 0.5));
  CHECK(std::abs(reduced.determinant() - 1.0) < 1e-9);
}

TEST_CASE("counts are invariant under reduction and relabeling") {
  SeededStream stream(41, 0);
  const ThinningRegion region(1.0, 1, 1, 1.0, 8.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto basis = testutil::random_basis(1, 1, stream);
    auto flowed = apply_flow(basis, stream.uniform(0.0, 2.0));
    const int64_t direct = count_points(CountRequest{
        AffineLattice(flowed), region, false, CountStrategy::Direct});
    const int64_t shuffled = count_points(CountRequest{
        AffineLattice(shuffle_basis(flowed, stream)), region, false,
        CountStrategy::Direct});
    CHECK(direct == shuffled);
  }
}

TEST_CASE("standard lattice fixtures") {
  const ThinningRegion region(1.0, 1, 1, 1.0, 4.0);
  auto points = enumerate_points(standard_lattice(), region);
  CHECK(points.size() == 10);

  std::multiset<std::pair<double, double>> got;
  for (const auto& p : points)
    got.insert({p.coords()[0], p.coords()[1]});
  const std::multiset<std::pair<double, double>> expected = {
      {-1, -1}, {0, -1}, {1, -1}, {-1, 1}, {0, 1},
      {1, 1},   {0, -2}, {0, 2},  {0, -3}, {0, 3}};
  CHECK(got == expected);

  CHECK(count_points(CountRequest{standard_lattice(), region}) == 10);
  CHECK(count_points(CountRequest{standard_lattice(), region, true}) == 6);
  CHECK(count_points(CountRequest{
            standard_lattice(), ThinningRegion(1.0, 1, 1, 2.0, 2.0)}) == 0);
}

TEST_CASE("squeezed diagonal basis fixture") {
  Eigen::MatrixXd cols(2, 2);
  cols << 2.0, 0.0, 0.0, 0.5;
  AffineLattice lat{UnimodularBasis(cols, 1, 1)};
  auto points = enumerate_points(lat, ThinningRegion(0.1, 1, 1, 1.0, 2.0));
  CHECK(points.size() == 4);
  for (const auto& p : points) {
    CHECK(p.coords()[0] == 0.0);
    CHECK(std::abs(p.coords()[1]) >= 1.0);
    CHECK(std::abs(p.coords()[1]) < 2.0);
  }
}

TEST_CASE("half-offset translate fixture") {
  AffineLattice lat(UnimodularBasis::identity(1, 1),
                    (Eigen::VectorXd(2) << 0.5, 0.5).finished());
  auto points = enumerate_points(lat, ThinningRegion(1.0, 1, 1, 1.0, 2.0));
  CHECK(points.size() == 4);
  for (const auto& p : points) {
    CHECK(std::abs(p.coords()[0]) == 0.5);
    CHECK(std::abs(p.coords()[1]) == 1.5);
  }
}

TEST_CASE("dyadic partial sums match the fixtures") {
  CHECK(birkhoff_counts(standard_lattice(), 1.0, 0).empty());
  CHECK(birkhoff_counts(standard_lattice(), 1.0, 2) ==
        std::vector<int64_t>{6, 10});

  AffineLattice shifted(UnimodularBasis::identity(1, 1),
                        (Eigen::VectorXd(2) << 0.5, 0.5).finished());
  CHECK(birkhoff_counts(shifted, 1.0, 2) == std::vector<int64_t>{4, 4});
}

TEST_CASE("dyadic decomposition equals the direct count") {
  SeededStream stream(43, 0);
  const double bs[] = {0.5, 1.0, 2.0};
  for (int trial = 0; trial < 24; ++trial) {
    const int m = 1 + static_cast<int>(stream.below(2));
    const int n = trial % 2 == 0 ? 1 : 3 - m;
    auto basis = testutil::random_basis(m, n, stream);
    const double b = bs[trial % 3];
    const int k = 1 + static_cast<int>(stream.below(m + n == 2 ? 7 : 5));

    AffineLattice lattice =
        trial % 4 == 0
            ? AffineLattice(basis, Eigen::VectorXd::Constant(m + n, 0.3))
            : AffineLattice(basis);

    const auto sums = birkhoff_counts(lattice, b, k);
    const int64_t direct = count_points(
        CountRequest{lattice,
                     ThinningRegion(b, m, n, 1.0, std::ldexp(1.0, k)),
                     false, CountStrategy::Direct});
    CHECK(sums.back() == direct);

    const int64_t dyadic = count_points(
        CountRequest{lattice,
                     ThinningRegion(b, m, n, 1.0, std::ldexp(1.0, k)),
                     false, CountStrategy::Dyadic});
    CHECK(dyadic == direct);
  }
}

TEST_CASE("counts are monotone in b and in the shell top") {
  SeededStream stream(47, 0);
  for (int trial = 0; trial < 30; ++trial) {
    auto basis = testutil::random_basis(1, 1, stream);
    AffineLattice lat(basis);
    const double b = stream.uniform(0.3, 1.5);
    const double hi = stream.uniform(2.0, 12.0);
    const int64_t base = count_points(
        CountRequest{lat, ThinningRegion(b, 1, 1, 1.0, hi)});
    CHECK(count_points(CountRequest{
              lat, ThinningRegion(b + 0.7, 1, 1, 1.0, hi)}) >= base);
    CHECK(count_points(CountRequest{
              lat, ThinningRegion(b, 1, 1, 1.0, hi + 5.0)}) >= base);
  }
}

TEST_CASE("counts commute with the flow on blocks") {
  SeededStream stream(53, 0);
  for (int trial = 0; trial < 30; ++trial) {
    auto basis = testutil::random_basis(1, 1, stream);
    const int j = static_cast<int>(stream.below(6));
    const int64_t in_block = count_points(CountRequest{
        AffineLattice(basis), ThinningRegion::dyadic_block(1.0, 1, 1, j)});
    const int64_t flowed = count_points(CountRequest{
        AffineLattice(apply_flow(basis, j * std::log(2.0))),
        ThinningRegion::dyadic_block(1.0, 1, 1, 0)});
    CHECK(in_block == flowed);
  }
}

TEST_CASE("enumeration agrees with a brute-force oracle") {
  SeededStream stream(59, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + static_cast<int>(stream.below(2));
    const int n = m == 2 ? 1 : 1 + static_cast<int>(stream.below(2));
    auto basis = testutil::random_basis(m, n, stream);
    const double b = stream.uniform(0.4, 1.6);
    const double hi = stream.uniform(1.5, 4.0);

    const int64_t engine = count_points(
        CountRequest{AffineLattice(basis), ThinningRegion(b, m, n, 1.0, hi)});
    const int kmax = testutil::oracle_kmax(basis.columns(), m, n, b, 1.0, hi);
    const int64_t oracle = testutil::oracle_count(
        basis.columns(), Eigen::VectorXd::Zero(m + n), m, n, b, 1.0, hi,
        kmax);
    CHECK(engine == oracle);
  }
}

TEST_CASE("error paths") {
  const ThinningRegion region(1.0, 1, 1, 1.0, 4.0);
  AffineLattice shifted(UnimodularBasis::identity(1, 1),
                        (Eigen::VectorXd(2) << 0.5, 0.5).finished());
  CHECK_THROWS_AS(
      count_points(CountRequest{shifted, region, /*primitive=*/true}), Error);

  // A tiny candidate budget trips the enumeration guard.
  CountRequest request{standard_lattice(),
                       ThinningRegion(1.0, 1, 1, 1.0, 4096.0), false,
                       CountStrategy::Direct, 100};
  CHECK_THROWS_AS(count_points(request), Error);
  try {
    count_points(request);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergocount/geometry.hpp"
#include "helpers.hpp"

using namespace ergo;

TEST_CASE("unit ball volumes") {
  CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(ball_volume(0), Error);
}

TEST_CASE("unit sphere areas") {
  CHECK(sphere_area(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sphere_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  CHECK_THROWS_AS(sphere_area(0), Error);
}

TEST_CASE("split vector norms and validation") {
  SplitVector v((Eigen::VectorXd(3) << 3.0, 0.0, 4.0).finished(), 1, 2);
  CHECK(v.x_norm() == doctest::Approx(3.0));
  CHECK(v.y_norm() == doctest::Approx(4.0));
  CHECK_THROWS_AS(SplitVector(Eigen::VectorXd::Zero(2), 1, 2), Error);
}

TEST_CASE("flow fixes time zero and scales blocks") {
  auto id = UnimodularBasis::identity(1, 1);
  auto same = apply_flow(id, 0.0);
  CHECK((same.columns() - id.columns()).norm() == 0.0);

  UnimodularBasis b((Eigen::MatrixXd(2, 2) << 1.0, 0.0, 1.0, 1.0).finished(),
                    1, 1);
  auto flowed = apply_flow(b, std::log(2.0));
  CHECK(flowed.columns()(0, 0) == doctest::Approx(2.0));
  CHECK(flowed.columns()(1, 0) == doctest::Approx(0.5));

  // m = 1, n = 2: the x-block scales by e^(2t) = 4 at t = log 2.
  SplitVector v((Eigen::VectorXd(3) << 1.0, 1.0, 1.0).finished(), 1, 2);
  auto w = apply_flow(v, std::log(2.0));
  CHECK(w.coords()[0] == doctest::Approx(4.0));
  CHECK(w.coords()[1] == doctest::Approx(0.5));
  CHECK(w.coords()[2] == doctest::Approx(0.5));
}

TEST_CASE("flow group law and determinant preservation") {
  SeededStream stream(7, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(stream.below(2));
    const int n = 1 + static_cast<int>(stream.below(2));
    auto basis = testutil::random_basis(m, n, stream);
    const double s = stream.uniform(-3.0, 3.0);
    const double t = stream.uniform(-3.0, 3.0);
    auto once = apply_flow(basis, s + t);
    auto twice = apply_flow(apply_flow(basis, s), t);
    CHECK((once.columns() - twice.columns()).norm() < 1e-9);
  }

  auto basis = testutil::random_basis(2, 1, stream);
  for (double t : {-20.0, -5.0, 5.0, 20.0})
    CHECK(std::abs(apply_flow(basis, t).determinant() - 1.0) < 1e-9);
}

TEST_CASE("flow renormalizes drift over long orbits") {
  SeededStream stream(11, 0);
  auto basis = testutil::random_basis(1, 1, stream);
  for (int i = 0; i < 400; ++i) basis = apply_flow(basis, std::log(2.0) / 7);
  CHECK(std::abs(basis.determinant() - 1.0) < 1e-9);
}

TEST_CASE("shear matrices") {
  auto zero = shear_matrix(Eigen::MatrixXd::Zero(1, 1), 1, 1);
  CHECK((zero.columns() - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);

  auto half = shear_matrix(Eigen::MatrixXd::Constant(1, 1, 0.5), 1, 1);
  CHECK(half.columns()(0, 0) == 1.0);
  CHECK(half.columns()(0, 1) == -0.5);
  CHECK(half.columns()(1, 0) == 0.0);
  CHECK(half.columns()(1, 1) == 1.0);

  SeededStream stream(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(stream.below(2));
    const int n = 1 + static_cast<int>(stream.below(2));
    Eigen::MatrixXd A(m, n), B(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        A(i, j) = stream.uniform(-2.0, 2.0);
        B(i, j) = stream.uniform(-2.0, 2.0);
      }
    CHECK(shear_matrix(A, m, n).determinant() == 1.0);
    // Shears compose additively in the parameter, entry by entry.
    Eigen::MatrixXd prod =
        shear_matrix(A, m, n).columns() * shear_matrix(B, m, n).columns();
    CHECK((prod - shear_matrix(A + B, m, n).columns()).norm() == 0.0);
  }
}

TEST_CASE("block decomposition") {
  auto id = decompose(Eigen::MatrixXd::Identity(2, 2), 1, 1);
  CHECK(id.B(0, 0) == doctest::Approx(1.0));
  CHECK(id.C(0, 0) == doctest::Approx(0.0));
  CHECK(id.D(0, 0) == doctest::Approx(1.0));
  CHECK(id.A(0, 0) == doctest::Approx(0.0));

  Eigen::MatrixXd g(2, 2);
  g << 2.0, 1.0, 1.0, 1.0;
  auto h = decompose(g, 1, 1);
  CHECK(h.B(0, 0) == doctest::Approx(2.0));
  CHECK(h.C(0, 0) == doctest::Approx(1.0));
  CHECK(h.A(0, 0) == doctest::Approx(-0.5));
  CHECK(h.D(0, 0) == doctest::Approx(0.5));
  CHECK((recompose(h) - g).norm() < 1e-12);

  Eigen::MatrixXd rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(decompose(rot, 1, 1), Error);
}

TEST_CASE("decompose round-trips random unimodular matrices") {
  SeededStream stream(19, 0);
  int done = 0;
  while (done < 100) {
    const int m = 1 + static_cast<int>(stream.below(2));
    const int n = 1 + static_cast<int>(stream.below(2));
    auto basis = testutil::random_basis(m, n, stream);
    const Eigen::MatrixXd g = basis.columns();
    if (std::abs(g.topLeftCorner(m, m).determinant()) < 1e-3) continue;
    auto h = decompose(g, m, n);
    CHECK((recompose(h) - g).norm() < 1e-8);
    ++done;
  }
}

TEST_CASE("basis validation and canonical sign") {
  CHECK_THROWS_AS(
      UnimodularBasis(Eigen::MatrixXd::Identity(2, 2) * 2.0, 1, 1), Error);
  // A reflection is accepted and canonicalized to determinant +1.
  Eigen::MatrixXd flip(2, 2);
  flip << 1.0, 0.0, 0.0, -1.0;
  UnimodularBasis basis(flip, 1, 1);
  CHECK(basis.determinant() == doctest::Approx(1.0));
}

TEST_CASE("affine offsets are canonical") {
  auto id = UnimodularBasis::identity(1, 1);
  AffineLattice lat(id, (Eigen::VectorXd(2) << 1.5, -0.25).finished());
  CHECK(lat.offset_coeffs()[0] == doctest::Approx(0.5));
  CHECK(lat.offset_coeffs()[1] == doctest::Approx(0.75));
  CHECK(lat.is_translate());
  CHECK_FALSE(AffineLattice(id).is_translate());
}

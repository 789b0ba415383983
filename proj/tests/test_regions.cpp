#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergocount/random.hpp"
#include "ergocount/region.hpp"
#include "helpers.hpp"

using namespace ergo;

namespace {

SplitVector vec2(double x, double y) {
  return SplitVector((Eigen::VectorXd(2) << x, y).finished(), 1, 1);
}

}  // namespace

TEST_CASE("membership predicate") {
  ThinningRegion region(1.0, 1, 1, 1.0, 4.0);
  CHECK(region.contains(vec2(1.0, 1.0)));       // on the hyperbola, kept
  CHECK_FALSE(region.contains(vec2(0.5, 3.0)));  // 1.5 > b
  CHECK(region.contains(vec2(0.0, 1.0)));        // shell lower edge, kept
  CHECK_FALSE(region.contains(vec2(0.0, 4.0)));  // shell upper edge, open

  ThinningRegion tall(1.0, 1, 2, 1.0, 2.0);
  CHECK(tall.contains(
      SplitVector((Eigen::VectorXd(3) << 0.5, 1.0, 0.0).finished(), 1, 2)));

  CHECK_THROWS_AS(region.contains(SplitVector(Eigen::VectorXd::Zero(3), 1, 2)),
                  Error);
}

TEST_CASE("volume closed form") {
  CHECK(ThinningRegion(1.0, 1, 1, 1.0, 2.0).volume() ==
        doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(ThinningRegion(1.0, 1, 1, 3.0, 3.0).volume() == 0.0);
}

TEST_CASE("volume matches Monte Carlo for m=1 n=2") {
  // Expected 1 * B_1 * C_2 * log(e) = 4 pi over y in [1, e).
  ThinningRegion region(1.0, 1, 2, 1.0, std::exp(1.0));
  const double expected = 4.0 * M_PI;
  CHECK(region.volume() == doctest::Approx(expected).epsilon(1e-12));

  SeededStream stream(2024, 0);
  const Eigen::VectorXd w = region.bounding_box_half_widths();
  double box = 1.0;
  for (int i = 0; i < 3; ++i) box *= 2.0 * w[i];
  int64_t hits = 0;
  const int64_t samples = 10000000;
  Eigen::VectorXd p(3);
  for (int64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < 3; ++i) p[i] = stream.uniform(-w[i], w[i]);
    if (region.contains(SplitVector(p, 1, 2))) ++hits;
  }
  const double estimate = box * static_cast<double>(hits) / samples;
  CHECK(std::abs(estimate - expected) / expected < 0.01);
}

TEST_CASE("dyadic blocks") {
  auto block0 = ThinningRegion::dyadic_block(1.0, 1, 1, 0);
  CHECK(block0.y_lo() == 1.0);
  CHECK(block0.y_hi() == 2.0);
  auto block1 = ThinningRegion::dyadic_block(1.0, 1, 1, 1);
  CHECK(block1.y_lo() == 2.0);
  CHECK(block1.y_hi() == 4.0);
  // Every block has the same volume b B_m C_n log 2.
  for (int j = 0; j < 8; ++j)
    CHECK(ThinningRegion::dyadic_block(0.5, 1, 2, j).volume() ==
          doctest::Approx(0.5 * 2.0 * 2.0 * M_PI * std::log(2.0)));
}

TEST_CASE("block volumes add up to the full shell") {
  const int k = 9;
  double total = 0.0;
  for (int j = 0; j < k; ++j)
    total += ThinningRegion::dyadic_block(2.0, 2, 1, j).volume();
  CHECK(total == doctest::Approx(
                     ThinningRegion(2.0, 2, 1, 1.0, std::ldexp(1.0, k))
                         .volume())
                     .epsilon(1e-12));
}

TEST_CASE("flow equivariance of block membership") {
  SeededStream stream(99, 0);
  auto block0 = ThinningRegion::dyadic_block(1.0, 1, 1, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    const int j = static_cast<int>(stream.below(6));
    auto block = ThinningRegion::dyadic_block(1.0, 1, 1, j);
    SplitVector v = vec2(stream.uniform(-2.0, 2.0),
                         stream.uniform(-70.0, 70.0));
    CHECK(block.contains(v) ==
          block0.contains(apply_flow(v, j * std::log(2.0))));
  }
}

TEST_CASE("rotation keeps the Monte Carlo volume") {
  ThinningRegion straight(0.8, 1, 1, 1.0, 4.0);
  ThinningRegion rotated(0.8, 1, 1, 1.0, 4.0, 0.6);
  CHECK(straight.volume() == rotated.volume());

  auto mc_volume = [](const ThinningRegion& region, uint64_t seed,
                      double* stderr_out) {
    SeededStream stream(seed, 0);
    const Eigen::VectorXd w = region.bounding_box_half_widths();
    const double box = 4.0 * w[0] * w[1];
    const int64_t samples = 2000000;
    int64_t hits = 0;
    Eigen::VectorXd p(2);
    for (int64_t s = 0; s < samples; ++s) {
      p[0] = stream.uniform(-w[0], w[0]);
      p[1] = stream.uniform(-w[1], w[1]);
      if (region.contains(SplitVector(p, 1, 1))) ++hits;
    }
    const double rate = static_cast<double>(hits) / samples;
    *stderr_out = box * std::sqrt(rate * (1.0 - rate) / samples);
    return box * rate;
  };

  double se_a = 0.0, se_b = 0.0;
  const double va = mc_volume(straight, 5, &se_a);
  const double vb = mc_volume(rotated, 6, &se_b);
  CHECK(std::abs(va - vb) < 3.0 * std::hypot(se_a, se_b));
}

TEST_CASE("region validation") {
  CHECK_THROWS_AS(ThinningRegion(0.0, 1, 1, 1.0, 2.0), Error);
  CHECK_THROWS_AS(ThinningRegion(1.0, 1, 1, 0.5, 2.0), Error);
  CHECK_THROWS_AS(ThinningRegion(1.0, 1, 1, 4.0, 2.0), Error);
  CHECK_THROWS_AS(ThinningRegion(1.0, 1, 2, 1.0, 2.0, 0.3), Error);
  CHECK_NOTHROW(ThinningRegion(1.0, 1, 1, 1.0, 2.0, 0.3));
}

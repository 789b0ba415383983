#include "ergocount/siegel.hpp"

#include <cmath>
#include <vector>

#include "ergocount/counting.hpp"
#include "ergocount/parallel.hpp"
#include "ergocount/sampling.hpp"

namespace ergo {

double zeta(int d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "zeta requires d >= 2");
  // Direct sum to N, then integral tail with the first two Euler-Maclaurin
  // corrections; the next term is of order d^3 N^(-d-3), far below 1e-12
  // for N = 2e5 already at d = 2.
  const double N = 200000.0;
  double sum = 0.0;
  for (double k = N; k >= 1.0; k -= 1.0) sum += std::pow(k, -d);
  sum += std::pow(N, 1.0 - d) / (d - 1.0);
  sum += 0.5 * std::pow(N, -static_cast<double>(d));
  sum -= d / 12.0 * std::pow(N, -1.0 - d);
  return sum;
}

MCEstimate siegel_average(const ThinningRegion& region, int64_t samples,
                          SiegelVariant variant, uint64_t master_seed,
                          uint64_t stream_offset, int threads) {
  if (region.m() != 1 || region.n() != 1)
    fail(ErrorCode::InvalidArgument,
         "the invariant-measure sampler only exists for d = 2");
  if (samples < 100)
    fail(ErrorCode::InvalidArgument, "at least 100 samples required");

  std::vector<double> values(samples);
  parallel_for(
      samples,
      [&](int64_t i) {
        SeededStream stream(master_seed, stream_offset + i);
        UnimodularBasis basis = sample_haar_x2(stream);
        CountRequest request{
            variant == SiegelVariant::Affine
                ? sample_affine_offset(basis, stream)
                : AffineLattice(std::move(basis)),
            region,
            variant == SiegelVariant::Primitive,
            CountStrategy::Direct,
            kDefaultCandidateBudget,
        };
        values[i] = static_cast<double>(count_points(request));
      },
      threads);

  // Welford in sample order; the estimate does not depend on the schedule.
  double mean = 0.0;
  double m2 = 0.0;
  for (int64_t i = 0; i < samples; ++i) {
    const double delta = values[i] - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (values[i] - mean);
  }
  const double variance = m2 / static_cast<double>(samples - 1);
  return MCEstimate{mean,
                    std::sqrt(variance / static_cast<double>(samples)),
                    samples};
}

}  // namespace ergo

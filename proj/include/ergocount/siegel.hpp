#ifndef ERGOCOUNT_SIEGEL_HPP
#define ERGOCOUNT_SIEGEL_HPP

#include <cstdint>

#include "ergocount/region.hpp"

namespace ergo {

struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(samples)
  int64_t samples = 0;
};

// Riemann zeta at an integer argument >= 2, by direct summation with an
// Euler-Maclaurin tail; the neglected remainder is below 1e-12.
double zeta(int d);

enum class SiegelVariant {
  Plain,      // sum of the indicator over nonzero lattice points
  Primitive,  // coprime-coefficient points only; mean is volume / zeta(2)
  Affine,     // lattice translated by a uniform torus offset
};

// Monte Carlo average of the lattice-point count over invariant-measure
// random 2-dimensional lattices.  The mean estimates the region's volume
// (divided by zeta(2) for the primitive variant).  Sample i draws from
// stream (master_seed, stream_offset + i), so results are independent of
// the thread count.
MCEstimate siegel_average(const ThinningRegion& region, int64_t samples,
                          SiegelVariant variant, uint64_t master_seed,
                          uint64_t stream_offset = 0, int threads = 0);

}  // namespace ergo

#endif

#ifndef ERGOCOUNT_SAMPLING_HPP
#define ERGOCOUNT_SAMPLING_HPP

#include "ergocount/diophantine.hpp"
#include "ergocount/geometry.hpp"
#include "ergocount/random.hpp"

namespace ergo {

// Form system with i.i.d. uniform [0,1) entries (and shift, when affine).
// Counts depend on the matrix only mod 1 (integer shifts relabel the
// solutions), so the unit cube is a full set of representatives.  Draw
// order: A row-major, then w.
FormSystem sample_form(int m, int n, bool affine, SeededStream& stream,
                       double b = 1.0);

// Exact draw from the invariant measure on covolume-1 lattices of R^2.
// The fundamental-domain parameter (x, y) is drawn from the hyperbolic
// density 1/y^2 restricted to { |x| <= 1/2, x^2 + y^2 >= 1 } - the
// x-marginal is arcsine-shaped, not uniform - and the frame is then
// rotated by a uniform angle.  Draw order: x, y, rotation.
UnimodularBasis sample_haar_x2(SeededStream& stream);

// Fundamental-domain parameters of the next draw, before rotation;
// exposed so the domain constraints are directly testable.
void sample_haar_x2_parameters(SeededStream& stream, double& x, double& y);

// Translate with offset coefficients i.i.d. uniform on [0,1).
AffineLattice sample_affine_offset(const UnimodularBasis& basis,
                                   SeededStream& stream);

}  // namespace ergo

#endif

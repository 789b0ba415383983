#ifndef ERGOCOUNT_COUNTING_HPP
#define ERGOCOUNT_COUNTING_HPP

#include <cstdint>
#include <vector>

#include "ergocount/geometry.hpp"
#include "ergocount/region.hpp"

namespace ergo {

inline constexpr int64_t kDefaultCandidateBudget = 1'000'000'000;

// LLL reduction (delta = 0.75) of the basis columns.  Returns a basis of
// the same lattice related to the input by an integer unimodular
// transform; the determinant magnitude is unchanged.
UnimodularBasis reduce_basis(const UnimodularBasis& basis,
                             double delta = 0.75);

// Re-expresses a translate in another basis of the same lattice; the
// offset coefficients are solved in the new basis and reduced mod 1.
AffineLattice rebase(const AffineLattice& lattice,
                     const UnimodularBasis& new_basis);

// LLL-reduces the basis while keeping the translate's point set.
AffineLattice reduce_lattice(const AffineLattice& lattice);

enum class CountStrategy {
  Auto,    // dyadic when the shell spans more than 2^6 and is unrotated
  Direct,  // one reduced-basis box enumeration over the whole shell
  Dyadic,  // per-block counts of the iteratively flowed, re-reduced lattice
};

struct CountRequest {
  AffineLattice lattice;
  ThinningRegion region;
  // Count only points whose integer coefficients are coprime; defined for
  // plain lattices only (a translate has no scalar structure).
  bool primitive_only = false;
  CountStrategy strategy = CountStrategy::Auto;
  int64_t candidate_budget = kDefaultCandidateBudget;
};

// All lattice (or translate) points inside the region.  The basis is
// LLL-reduced first; integer coefficient ranges come from applying the
// inverse basis to the region's bounding box, and the resulting integer
// box is scanned and filtered through the exact membership predicate.
std::vector<SplitVector> enumerate_points(
    const AffineLattice& lattice, const ThinningRegion& region,
    int64_t candidate_budget = kDefaultCandidateBudget);

int64_t count_points(const CountRequest& request);

// Partial sums of base-block counts of the iteratively flowed lattice:
// entry j is the count over y in [1, 2^(j+1)).  The final entry equals
// the direct count over y in [1, 2^k) exactly.
std::vector<int64_t> birkhoff_counts(
    const AffineLattice& lattice, double b, int k,
    int64_t candidate_budget = kDefaultCandidateBudget);

}  // namespace ergo

#endif

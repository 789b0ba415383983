#ifndef ERGOCOUNT_HARNESS_HPP
#define ERGOCOUNT_HARNESS_HPP

#include "ergocount/errors.hpp"
#include "ergocount/report.hpp"
#include "ergocount/scenario.hpp"

namespace ergo {

// Raised when a counter exhausts its candidate budget mid-run; carries
// whatever rows had already been produced so callers can flush a partial
// report before failing.
class BudgetExceededWithPartial : public Error {
public:
  BudgetExceededWithPartial(const std::string& message,
                            ConvergenceReport partial)
      : Error(ErrorCode::BudgetExceeded, message),
        partial_(std::move(partial)) {}

  const ConvergenceReport& partial() const { return partial_; }

private:
  ConvergenceReport partial_;
};

// Runs the scenario's experiment over its sample sweep and dyadic scale
// grid.  Every expected column is normalizer * log(scale) with the
// normalizer recomputed from ball volumes, sphere areas and zeta at run
// time.  Reports are byte-identical across reruns with the same seed,
// independent of the thread count.
ConvergenceReport run_scenario(const Scenario& scenario);

}  // namespace ergo

#endif

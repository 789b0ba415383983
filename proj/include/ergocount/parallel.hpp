#ifndef ERGOCOUNT_PARALLEL_HPP
#define ERGOCOUNT_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace ergo {

// Number of worker threads to use: `requested` if positive, otherwise the
// hardware concurrency, in both cases capped by the ERGOCOUNT_THREADS
// environment variable when it is set to a positive integer.
int thread_budget(int requested = 0);

// Runs body(i) for i in [0, n).  Work items must be independent and write
// only to index-i slots so that results do not depend on the schedule.
// Exceptions are captured and the one thrown by the lowest index is
// rethrown after all workers finish.
void parallel_for(int64_t n, const std::function<void(int64_t)>& body,
                  int threads = 0);

}  // namespace ergo

#endif

#include "ergocount/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ergo {

int thread_budget(int requested) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("ERGOCOUNT_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0 && cap < n) n = static_cast<int>(cap);
  }
  return n;
}

void parallel_for(int64_t n, const std::function<void(int64_t)>& body,
                  int threads) {
  if (n <= 0) return;
  int workers = thread_budget(threads);
  if (workers > n) workers = static_cast<int>(n);

  if (workers <= 1) {
    for (int64_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<int64_t> next{0};
  std::mutex error_mutex;
  int64_t error_index = -1;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error_index < 0 || i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (error) std::rethrow_exception(error);
}

}  // namespace ergo

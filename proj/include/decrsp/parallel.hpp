#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace decrsp {

enum class Execution { Serial, Parallel };

int parallel_threads();

// Runs f(0..n-1). The parallel path uses an OpenMP dynamic schedule; the
// serial path is the reference. The first exception is rethrown.
template <class F>
void for_each_index(Execution ex, std::size_t n, F&& f) {
  if (ex == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace decrsp

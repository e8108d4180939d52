#pragma once

#include <cstdint>
#include <exception>
#include <mutex>

namespace drad {

/// Sets the OpenMP worker cap; n <= 0 leaves the runtime default.
void set_thread_count(int n);
int thread_count();

/// OpenMP loop over [0, n) whose body may throw: the first exception is
/// captured and rethrown on the calling thread once the loop finishes.
template <typename Body>
void parallel_for(std::int64_t n, Body&& body) {
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace drad

// Execution policy for grid kernels: serial reference loop or OpenMP.
#pragma once

#include <cstdint>
#include <omp.h>

namespace vk {

enum class Exec { serial, parallel };

/// Calls f(i) for i in [0, n). Results must be written to per-index slots.
template <class F>
void for_each_index(std::int64_t n, Exec exec, F&& f) {
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) f(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) f(i);
}

inline void set_worker_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

inline int worker_count() { return omp_get_max_threads(); }

}  // namespace vk

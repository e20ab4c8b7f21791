// Minimal OpenMP helper. Kernels write to preassigned slots so results do
// not depend on the thread count.
#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsfuse {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs f(i) for i in [0, n). Parallel when built with OpenMP.
template <typename F>
void parallel_for(std::ptrdiff_t n, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        f(i);
    }
}

}  // namespace hsfuse

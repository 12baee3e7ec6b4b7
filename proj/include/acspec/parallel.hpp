#ifndef ACSPEC_PARALLEL_HPP
#define ACSPEC_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace acspec::par {

// Execution mode for the data-parallel kernels (energy scans, ensembles,
// power-iteration mat-vecs). Every kernel has a serial path that produces
// bitwise-identical results; tests compare the two.
enum class Mode { serial, openmp };

inline Mode default_mode() {
#ifdef _OPENMP
    return Mode::openmp;
#else
    return Mode::serial;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs body(i) for i in [0, n). Each index must write only to its own slots.
template <typename Body>
void parallel_for(std::size_t n, Mode mode, const Body& body) {
#ifdef _OPENMP
    if (mode == Mode::openmp) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < (long long)n; ++i) body((std::size_t)i);
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

} // namespace acspec::par

#endif

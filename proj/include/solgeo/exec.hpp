#pragma once

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace solgeo {

/// Execution policy for node-parallel kernels. The serial path is the
/// reference implementation; the parallel path must produce identical
/// results (node updates are independent).
enum class Exec { serial, parallel };

inline Exec& default_exec() {
    static Exec e = Exec::parallel;
    return e;
}

template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
    if (exec == Exec::parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
        for (long long i = 0; i < static_cast<long long>(n); ++i) f(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) f(i);
    }
}

template <class F>
void for_each_index(std::size_t n, F&& f) {
    for_each_index(n, default_exec(), static_cast<F&&>(f));
}

}  // namespace solgeo

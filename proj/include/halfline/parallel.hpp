#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace halfline {

/// Execution policy for the data-parallel kernels. Every parallel loop has a
/// serial twin (same code path, no OpenMP) used as the reference in tests and
/// in the benchmark tool.
enum class Exec { serial, openmp };

/// Process-wide default policy and thread cap (0 = OpenMP default).
Exec default_exec();
void set_default_exec(Exec e);
void set_max_threads(int n);
int effective_threads();

/// Runs f(i) for i in [0, n). Exceptions thrown by workers are captured and
/// rethrown (first one wins) after the loop completes.
template <class F>
void parallel_for(std::size_t n, F&& f, Exec exec) {
    if (exec == Exec::serial || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
#ifdef _OPENMP
    std::exception_ptr eptr = nullptr;
    std::mutex m;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(m);
            if (!eptr) eptr = std::current_exception();
        }
    }
    if (eptr) std::rethrow_exception(eptr);
#else
    for (std::size_t i = 0; i < n; ++i) f(i);
#endif
}

template <class F>
void parallel_for(std::size_t n, F&& f) {
    parallel_for(n, std::forward<F>(f), default_exec());
}

}  // namespace halfline

#include "halfline/parallel.hpp"

#include <atomic>

namespace halfline {

namespace {
std::atomic<Exec> g_exec{Exec::openmp};
}

Exec default_exec() { return g_exec.load(); }

void set_default_exec(Exec e) { g_exec.store(e); }

void set_max_threads(int n) {
    if (n <= 0) return;
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
    if (n == 1) set_default_exec(Exec::serial);
}

int effective_threads() {
    if (default_exec() == Exec::serial) return 1;
#ifdef _OPENMP
    int nt = 1;
#pragma omp parallel
    {
#pragma omp master
        nt = omp_get_num_threads();
    }
    return nt;
#else
    return 1;
#endif
}

}  // namespace halfline

// Timing comparison of the serial reference paths against the OpenMP
// kernels: kernel-slice sampling, grid reconstruction, and the reflection
// sweep. Outputs one table row per kernel.

#include <chrono>
#include <cstdio>

#include "halfline/config.hpp"
#include "halfline/marchenko.hpp"
#include "halfline/parallel.hpp"
#include "halfline/scattering.hpp"

using namespace halfline;

namespace {

template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    ProblemConfig cfg = ProblemConfig::soliton_case(0.5, -3.0, 4.0);
    cfg.x_grid = {0.0, 6.3, 32};
    cfg.t_grid = {0.0, 4.0, 8};

    std::printf("threads available: %d\n", effective_threads());
    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial[ms]", "openmp[ms]", "speedup");

    scat::Forward fwd(cfg);

    {
        std::vector<double> ks;
        for (int i = 0; i < 64; ++i) ks.push_back(-8.0 + 16.0 * i / 63.0);
        std::vector<cplx> out(ks.size());
        auto sweep = [&](Exec e) {
            parallel_for(ks.size(), [&](std::size_t i) { out[i] = fwd.reflection(ks[i]); }, e);
        };
        const double ts = time_ms([&] { sweep(Exec::serial); });
        const double tp = time_ms([&] { sweep(Exec::openmp); });
        std::printf("%-28s %12.1f %12.1f %8.2f\n", "reflection sweep", ts, tp, ts / tp);
    }

    const ScatteringData data = fwd.assemble();
    const marchenko::KernelField field(data);

    {
        marchenko::KernelSliceOptions opts;
        const double ts =
            time_ms([&] { (void)marchenko::KernelSlice::build(field, 1.0, opts, Exec::serial); });
        const double tp =
            time_ms([&] { (void)marchenko::KernelSlice::build(field, 1.0, opts, Exec::openmp); });
        std::printf("%-28s %12.1f %12.1f %8.2f\n", "kernel slice sampling", ts, tp, ts / tp);
    }

    {
        const double ts = time_ms([&] { (void)marchenko::reconstruct_grid(data, cfg, Exec::serial); });
        const double tp = time_ms([&] { (void)marchenko::reconstruct_grid(data, cfg, Exec::openmp); });
        std::printf("%-28s %12.1f %12.1f %8.2f\n", "grid reconstruction", ts, tp, ts / tp);
    }
    return 0;
}

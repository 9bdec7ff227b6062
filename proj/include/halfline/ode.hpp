#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "halfline/types.hpp"

namespace halfline {

/// Embedded Dormand-Prince 5(4) with standard PI-free step control.
/// State is a fixed-size complex vector; the RHS is f(t, y, dydt).
/// Integrates from t0 to t1 (either direction). Throws StepFailure when the
/// controller underflows the step size.
template <std::size_t N>
std::array<cplx, N> integrate_rk45(const std::function<void(double, const std::array<cplx, N>&,
                                                            std::array<cplx, N>&)>& f,
                                   double t0, double t1, std::array<cplx, N> y, double rtol,
                                   double atol) {
    if (t0 == t1) return y;
    const double dir = (t1 > t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    // Dormand-Prince coefficients.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                     e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                     e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    std::array<cplx, N> k1, k2, k3, k4, k5, k6, k7, yt, ynew;
    double t = t0;
    double h = dir * std::min(0.1 * span, 0.1);
    f(t, y, k1);
    std::size_t steps = 0;

    while (dir * (t1 - t) > 0.0) {
        if (std::abs(h) > std::abs(t1 - t)) h = t1 - t;
        if (std::abs(h) < 1e-14 * std::max(1.0, span))
            throw StepFailure("rk45: step size underflow");
        if (++steps > 20'000'000) throw StepFailure("rk45: step budget exhausted");

        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a21 * k1[i]);
        f(t + c2 * h, yt, k2);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, yt, k3);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, yt, k4);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, yt, k5);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, yt, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, ynew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = std::abs(e) / sc;
            err += r * r;
        }
        err = std::sqrt(err / N);

        if (err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
        }
        const double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::min(5.0, std::max(0.2, fac));
    }
    return y;
}

}  // namespace halfline

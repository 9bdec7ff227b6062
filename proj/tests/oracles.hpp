// Shared test oracles: independent quadrature, brute-force winding scans,
// Richardson comparisons, and small closed-form references. These stay
// deliberately naive and separate from the library code paths they check.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "halfline/quadrature.hpp"
#include "halfline/types.hpp"

namespace oracles {

using halfline::cplx;

/// Adaptive-Simpson reference for complex integrands on [a, b].
inline cplx ref_integral(const std::function<cplx(double)>& f, double a, double b,
                         double tol = 1e-12) {
    return halfline::adaptive_simpson(f, a, b, tol);
}

/// Reference oscillatory integral int_a^b A(sigma dir) e^{i theta} d(sigma dir)
/// by brute panel subdivision fine enough for the total phase.
inline cplx ref_line_osc(const std::function<cplx(cplx)>& amplitude, cplx dir, double a, double b,
                         double s, double t, double tol = 1e-12) {
    auto f = [&](double sigma) {
        const cplx k = sigma * dir;
        const cplx th = k * s + 8.0 * k * k * k * t;
        return amplitude(k) * std::exp(halfline::iu() * th) * dir;
    };
    // chunk by equal phase increments (the phase is cubic in sigma, so
    // uniform-width chunks would under-resolve the far end)
    auto phase = [&](double sig) { return sig * s + 8.0 * sig * sig * sig * t; };
    const double per_chunk = 10.0;
    std::vector<double> edges{a};
    while (edges.back() < b) {
        if (phase(b) - phase(edges.back()) <= per_chunk) {
            edges.push_back(b);
            break;
        }
        double lo = edges.back(), hi = b;
        for (int i = 0; i < 60; ++i) {
            const double m = 0.5 * (lo + hi);
            (phase(m) - phase(edges.back()) < per_chunk ? lo : hi) = m;
        }
        edges.push_back(hi);
    }
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        acc += ref_integral(f, edges[i], edges[i + 1], tol);
    return acc;
}

/// Brute-force argument-principle scan: winding numbers on a fine cell grid,
/// then repeated cell bisection around the located zeros. Independent of the
/// production finder's adaptive subdivision and Newton polish.
std::vector<cplx> brute_zero_scan(const std::function<cplx(cplx)>& f, double re0, double re1,
                                  double im0, double im1, int n_cells, double want_res);

inline double winding_raw(const std::function<cplx(cplx)>& f, double re0, double re1, double im0,
                          double im1, int per_edge) {
    double total = 0.0;
    cplx prev = f(cplx(re0, im0));
    auto walk = [&](cplx a, cplx b) {
        for (int i = 1; i <= per_edge; ++i) {
            const cplx z = a + (b - a) * (static_cast<double>(i) / per_edge);
            const cplx fz = f(z);
            total += std::arg(fz / prev);
            prev = fz;
        }
    };
    walk(cplx(re0, im0), cplx(re1, im0));
    walk(cplx(re1, im0), cplx(re1, im1));
    walk(cplx(re1, im1), cplx(re0, im1));
    walk(cplx(re0, im1), cplx(re0, im0));
    return total / (2.0 * halfline::pi);
}

inline std::vector<cplx> brute_zero_scan(const std::function<cplx(cplx)>& f, double re0,
                                         double re1, double im0, double im1, int n_cells,
                                         double want_res) {
    std::vector<cplx> zeros;
    const double dr = (re1 - re0) / n_cells, di = (im1 - im0) / n_cells;
    for (int i = 0; i < n_cells; ++i) {
        for (int j = 0; j < n_cells; ++j) {
            double a = re0 + i * dr, b = a + dr, c = im0 + j * di, d = c + di;
            const double w = winding_raw(f, a, b, c, d, 48);
            if (std::lround(w) == 0) continue;
            // bisect down to the requested resolution
            while (std::max(b - a, d - c) > want_res) {
                const double rm = 0.5 * (a + b), im = 0.5 * (c + d);
                bool placed = false;
                const double quadrants[4][4] = {{a, rm, c, im}, {rm, b, c, im},
                                                {a, rm, im, d}, {rm, b, im, d}};
                for (const auto& q : quadrants) {
                    if (std::lround(winding_raw(f, q[0], q[1], q[2], q[3], 48)) != 0) {
                        a = q[0];
                        b = q[1];
                        c = q[2];
                        d = q[3];
                        placed = true;
                        break;
                    }
                }
                if (!placed) break;  // zero on an internal edge; accept the cell center
            }
            zeros.push_back(cplx(0.5 * (a + b), 0.5 * (c + d)));
        }
    }
    return zeros;
}

/// Tracks the maximum of a grid function along x for the peak-motion check.
inline double argmax_x(const std::vector<double>& xs, const std::vector<double>& row) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i)
        if (row[i] > row[best]) best = i;
    return xs[best];
}

}  // namespace oracles

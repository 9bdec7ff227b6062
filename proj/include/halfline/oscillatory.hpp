#pragma once

#include <functional>
#include <vector>

#include "halfline/types.hpp"

namespace halfline::osc {

/// Integrals of the form
///     I(s,t) = orient * \int_line A(k) (ik)^p e^{i(k s + 8 k^3 t)} dk,   s,t >= 0,
/// over a straight ray k = sigma * dir, sigma in [edges.front(), edges.back()],
/// with A given by piecewise Chebyshev interpolation on the panels. The phase
/// factor is handled exactly: for mild total phase the panels are integrated
/// by chunked Gauss-Legendre on the line; otherwise each panel moment is
/// evaluated from a pair of exponentially convergent descent-path integrals
/// anchored at the panel edges (directions pi/6 or 5pi/6, where both e^{iks}
/// and e^{8ik^3 t} decay for s,t >= 0).
struct LineQuad {
    cplx dir{1.0, 0.0};
    double orient = 1.0;
    std::vector<double> edges;                // ascending sigma
    int degree = 12;
    std::vector<std::vector<cplx>> samples;   // per panel: Lobatto samples of A
    std::vector<std::vector<cplx>> mono;      // per panel: monomial coeffs in tau

    static LineQuad build(cplx dir, double orient, std::vector<double> edges, int degree,
                          const std::function<cplx(cplx)>& amplitude);

    /// Rebuild monomial coefficients from stored samples (after deserialization).
    void refresh();

    /// Interpolated amplitude at a point on the line (sigma inside the edges).
    cplx amp_at(double sigma) const;

    bool empty() const { return edges.size() < 2; }
    double sigma_max() const { return edges.empty() ? 0.0 : edges.back(); }
};

/// Evaluate the oscillatory line integral; p in {0, 1}.
cplx line_integral(const LineQuad& lq, double s, double t, int p);

/// Power-law tail model  A(k) ~ sum_m coeff[m-1] k^{-m}  used beyond sigma0.
struct PowerTail {
    double sigma0 = 0.0;
    std::vector<cplx> coeff;
    bool empty() const { return coeff.empty() || sigma0 <= 0.0; }
    cplx value(cplx k) const {
        cplx acc = 0.0, kin = 1.0 / k;
        cplx pw = kin;
        for (const cplx& c : coeff) {
            acc += c * pw;
            pw *= kin;
        }
        return acc;
    }
};

/// Tail integral over both real tails |k| >= sigma0 (left plus right),
/// assuming the conjugate-reflection structure coeff_m = i^m * real.
cplx real_tail_pair(const PowerTail& tail, double s, double t, int p);

/// Tail integral over the two boundary rays beyond sigma0, oriented
/// outgoing along pi/3 minus incoming along 2pi/3.
cplx ray_tail_pair(const PowerTail& tail, double s, double t, int p);

/// Fit a power tail  sum a_m k^{-m}, m = 1..mmax, to samples (k_i, f_i) by
/// least squares with the reflection constraint conj(a_m) = (-1)^m a_m.
PowerTail fit_power_tail(const std::vector<cplx>& ks, const std::vector<cplx>& fs, double sigma0,
                         int mmax);

}  // namespace halfline::osc

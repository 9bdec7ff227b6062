#include "halfline/oscillatory.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "halfline/quadrature.hpp"

namespace halfline::osc {

namespace {

constexpr double kStaticEps = 1e-13;

inline cplx phase_exp(cplx k, double s, double t) {
    // e^{i(ks + 8k^3 t)}; bounded by 1 on all contours we use.
    const cplx th = k * s + 8.0 * k * k * k * t;
    return std::exp(iu() * th);
}

inline double decay_gain(cplx ke, cplx k, double s, double t) {
    // Im theta(k) - Im theta(ke): the exponential decay accumulated along a
    // descent path from ke to k. Monotone by construction of the directions.
    const cplx d = (k * s + 8.0 * k * k * k * t) - (ke * s + 8.0 * ke * ke * ke * t);
    return d.imag();
}

/// Descent direction for a line direction: into the first sector for
/// arg(dir) in [0, pi/2), into the third for the rest.
inline double descent_beta(cplx dir) {
    const double a = std::arg(dir);
    return (a >= -1e-12 && a < pi / 2.0) ? pi / 6.0 : 5.0 * pi / 6.0;
}

struct PathNode {
    cplx k;
    cplx c;  // quadrature weight * e^{i beta} * e^{i theta(k)}
};

/// Nodes of the descent integral W(ke) = int_0^inf f(ke + u e^{i beta}) e^{i beta} du
/// with f containing e^{i theta}. Panels are equidistributed in the decay
/// exponent, which also equidistributes the residual oscillation.
std::vector<PathNode> descent_path(cplx ke, double beta, double s, double t, double gain_target) {
    const cplx eb = std::polar(1.0, beta);
    auto g = [&](double u) { return decay_gain(ke, ke + u * eb, s, t); };

    // u_max with g(u_max) = gain_target, by doubling then bisection.
    double hi = 1.0, lo = 0.0;
    int guard = 0;
    while (g(hi) < gain_target) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 90) throw QuadratureNotConverged("descent path: no decay detected");
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < gain_target ? lo : hi) = mid;
    }
    const double u_max = hi;

    const double dg = 3.0;
    const int npan = std::max(2, static_cast<int>(std::ceil(gain_target / dg)));
    const auto& [gx, gw] = gauss_legendre(14);

    std::vector<PathNode> nodes;
    nodes.reserve(static_cast<std::size_t>(npan) * gx.size());
    double u_prev = 0.0;
    for (int p = 1; p <= npan; ++p) {
        double u_next = u_max;
        if (p < npan) {
            const double target = gain_target * p / npan;
            double a = u_prev, b = u_max;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (a + b);
                (g(mid) < target ? a : b) = mid;
            }
            u_next = b;
        }
        const double half = 0.5 * (u_next - u_prev), mid = 0.5 * (u_next + u_prev);
        if (half > 0.0) {
            for (std::size_t j = 0; j < gx.size(); ++j) {
                const double u = mid + half * gx[j];
                const cplx k = ke + u * eb;
                nodes.push_back({k, gw[j] * half * eb * phase_exp(k, s, t)});
            }
        }
        u_prev = u_next;
    }
    return nodes;
}

/// Effective tau-monomial coefficients including the (ik)^p factor.
std::vector<cplx> effective_coeffs(const std::vector<cplx>& mono, cplx kc, cplx hc, int p) {
    if (p == 0) return mono;
    std::vector<cplx> out(mono.size() + 1, cplx(0.0));
    for (std::size_t j = 0; j < mono.size(); ++j) {
        out[j] += iu() * kc * mono[j];
        out[j + 1] += iu() * hc * mono[j];
    }
    return out;
}

cplx contract(const std::vector<PathNode>& nodes, const std::vector<cplx>& coef, cplx kc,
              cplx hc) {
    cplx acc = 0.0;
    for (const PathNode& n : nodes) {
        const cplx tau = (n.k - kc) / hc;
        cplx pw = 1.0, val = 0.0;
        for (const cplx& c : coef) {
            val += c * pw;
            pw *= tau;
        }
        acc += n.c * val;
    }
    return acc;
}

}  // namespace

LineQuad LineQuad::build(cplx dir, double orient, std::vector<double> edges, int degree,
                         const std::function<cplx(cplx)>& amplitude) {
    LineQuad lq;
    lq.dir = dir;
    lq.orient = orient;
    lq.edges = std::move(edges);
    lq.degree = degree;
    const auto tau = chebyshev_lobatto(degree);
    for (std::size_t p = 0; p + 1 < lq.edges.size(); ++p) {
        const double a = lq.edges[p], b = lq.edges[p + 1];
        std::vector<cplx> smp(tau.size());
        for (std::size_t j = 0; j < tau.size(); ++j) {
            const double sigma = 0.5 * (a + b) + 0.5 * (b - a) * tau[j];
            smp[j] = amplitude(sigma * dir);
        }
        lq.samples.push_back(std::move(smp));
    }
    lq.refresh();
    return lq;
}

void LineQuad::refresh() {
    mono.clear();
    mono.reserve(samples.size());
    for (const auto& smp : samples) mono.push_back(chebyshev_to_monomial(smp));
}

cplx LineQuad::amp_at(double sigma) const {
    if (empty()) return 0.0;
    const double s = std::clamp(sigma, edges.front(), edges.back());
    std::size_t p = 0;
    while (p + 2 < edges.size() && s > edges[p + 1]) ++p;
    const double a = edges[p], b = edges[p + 1];
    const double tau = (2.0 * s - a - b) / (b - a);
    return poly_eval(mono[p], tau);
}

cplx line_integral(const LineQuad& lq, double s, double t, int p) {
    if (lq.empty()) return 0.0;
    const double smax = lq.edges.back();
    const double total_phase = smax * s + 8.0 * smax * smax * smax * t;

    cplx acc = 0.0;
    if (total_phase <= 60.0) {
        // Direct composite Gauss-Legendre on the line; chunk panels whose
        // local phase span is large.
        const auto& [gx, gw] = gauss_legendre(lq.degree + 4);
        for (std::size_t pan = 0; pan + 1 < lq.edges.size(); ++pan) {
            const double a = lq.edges[pan], b = lq.edges[pan + 1];
            const cplx tha = (a * lq.dir) * s + 8.0 * std::pow(a, 3) * lq.dir * lq.dir * lq.dir * t;
            const cplx thb = (b * lq.dir) * s + 8.0 * std::pow(b, 3) * lq.dir * lq.dir * lq.dir * t;
            const int chunks = 1 + static_cast<int>(std::abs(thb - tha) / 8.0);
            const double w_chunk = (b - a) / chunks;
            for (int c = 0; c < chunks; ++c) {
                const double ca = a + c * w_chunk, half = 0.5 * w_chunk;
                for (std::size_t j = 0; j < gx.size(); ++j) {
                    const double sigma = ca + half * (gx[j] + 1.0);
                    const double tau = (2.0 * sigma - a - b) / (b - a);
                    const cplx k = sigma * lq.dir;
                    cplx f = poly_eval(lq.mono[pan], tau);
                    if (p == 1) f *= iu() * k;
                    acc += gw[j] * half * lq.dir * f * phase_exp(k, s, t);
                }
            }
        }
        return lq.orient * acc;
    }

    // Descent-path moments. Paths are shared between adjacent panels.
    const double beta = descent_beta(lq.dir);
    double hmin = 1e300;
    for (std::size_t pan = 0; pan + 1 < lq.edges.size(); ++pan)
        hmin = std::min(hmin, 0.5 * (lq.edges[pan + 1] - lq.edges[pan]));

    // Gain target grows with the polynomial degree: tau^m grows along the path.
    auto make_path = [&](double sigma_e) {
        const cplx ke = sigma_e * lq.dir;
        double target = 42.0;
        const cplx eb = std::polar(1.0, beta);
        for (int it = 0; it < 4; ++it) {
            // estimate u_max for the current target by doubling
            double u = 1.0;
            int guard = 0;
            while (decay_gain(ke, ke + u * eb, s, t) < target && guard++ < 90) u *= 2.0;
            target = 42.0 + (lq.degree + 2) * std::log1p(u / hmin);
        }
        return descent_path(ke, beta, s, t, target);
    };

    std::vector<std::vector<PathNode>> paths(lq.edges.size());
    for (std::size_t e = 0; e < lq.edges.size(); ++e) paths[e] = make_path(lq.edges[e]);

    for (std::size_t pan = 0; pan + 1 < lq.edges.size(); ++pan) {
        const double a = lq.edges[pan], b = lq.edges[pan + 1];
        const cplx kc = 0.5 * (a + b) * lq.dir;
        const cplx hc = 0.5 * (b - a) * lq.dir;
        const auto coef = effective_coeffs(lq.mono[pan], kc, hc, p);
        acc += contract(paths[pan], coef, kc, hc) - contract(paths[pan + 1], coef, kc, hc);
    }
    return lq.orient * acc;
}

namespace {

/// W-integral of the power tail from a complex anchor along beta.
cplx tail_descent(const PowerTail& tail, cplx ke, double beta, double s, double t, int p) {
    const auto nodes = descent_path(ke, beta, s, t, 44.0);
    cplx acc = 0.0;
    for (const PathNode& n : nodes) {
        cplx f = tail.value(n.k);
        if (p == 1) f *= iu() * n.k;
        acc += n.c * f;
    }
    return acc;
}

cplx static_real_tail_pair(const PowerTail& tail, int p) {
    // s, t -> 0+ limits. The inverse-first-power term is conditionally
    // convergent and keeps its jump value: int_{|k|>=s0} e^{iks}/k dk -> i pi.
    cplx acc = 0.0;
    const double s0 = tail.sigma0;
    for (std::size_t i = 0; i < tail.coeff.size(); ++i) {
        const int m = static_cast<int>(i) + 1;
        const cplx c = tail.coeff[i];
        if (p == 0) {
            if (m == 1)
                acc += c * iu() * pi;
            else
                acc += c * (1.0 + ((m % 2 == 0) ? 1.0 : -1.0)) * std::pow(s0, 1 - m) / double(m - 1);
        } else {
            if (m == 1)
                acc += -2.0 * iu() * c * s0;
            else if (m == 2)
                acc += iu() * c * iu() * pi;
            else
                acc += iu() * c * (1.0 + ((m % 2 == 1) ? 1.0 : -1.0)) * std::pow(s0, 2 - m) / double(m - 2);
        }
    }
    return acc;
}

cplx static_ray_tail_pair(const PowerTail& tail, int p) {
    // Oriented ray pair (outgoing pi/3 minus incoming 2pi/3); the first-power
    // limit is i pi / 3 from the E1 branch offsets of the two rays.
    cplx acc = 0.0;
    const double s0 = tail.sigma0;
    const auto eang = [](double a) { return std::polar(1.0, a); };
    for (std::size_t i = 0; i < tail.coeff.size(); ++i) {
        const int m = static_cast<int>(i) + 1;
        const cplx c = tail.coeff[i];
        if (p == 0) {
            if (m == 1) {
                acc += c * iu() * pi / 3.0;
            } else {
                const cplx bracket = eang((1 - m) * pi / 3.0) - eang((1 - m) * 2.0 * pi / 3.0);
                acc += c * bracket * std::pow(s0, 1 - m) / double(m - 1);
            }
        } else {
            if (m == 1)
                acc += -iu() * c * s0;
            else if (m == 2)
                acc += iu() * c * iu() * pi / 3.0;
            else {
                const cplx bracket = eang((2 - m) * pi / 3.0) - eang((2 - m) * 2.0 * pi / 3.0);
                acc += iu() * c * bracket * std::pow(s0, 2 - m) / double(m - 2);
            }
        }
    }
    return acc;
}

}  // namespace

cplx real_tail_pair(const PowerTail& tail, double s, double t, int p) {
    if (tail.empty()) return 0.0;
    if (s < kStaticEps && t < kStaticEps) return static_real_tail_pair(tail, p);
    const cplx right = tail_descent(tail, cplx(tail.sigma0, 0.0), pi / 6.0, s, t, p);
    const cplx left = -tail_descent(tail, cplx(-tail.sigma0, 0.0), 5.0 * pi / 6.0, s, t, p);
    return left + right;
}

cplx ray_tail_pair(const PowerTail& tail, double s, double t, int p) {
    if (tail.empty()) return 0.0;
    if (s < kStaticEps && t < kStaticEps) return static_ray_tail_pair(tail, p);
    const cplx out_anchor = tail.sigma0 * std::polar(1.0, pi / 3.0);
    const cplx in_anchor = tail.sigma0 * std::polar(1.0, 2.0 * pi / 3.0);
    const cplx out_part = tail_descent(tail, out_anchor, pi / 6.0, s, t, p);
    const cplx in_part = tail_descent(tail, in_anchor, 5.0 * pi / 6.0, s, t, p);
    return out_part - in_part;
}

PowerTail fit_power_tail(const std::vector<cplx>& ks, const std::vector<cplx>& fs, double sigma0,
                         int mmax) {
    PowerTail tail;
    tail.sigma0 = sigma0;
    if (ks.empty()) return tail;
    // Unknowns a_m real with coeff_m = a_m * (i if m odd else 1).
    Eigen::MatrixXd A(2 * ks.size(), mmax);
    Eigen::VectorXd b(2 * ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        cplx kin = 1.0 / ks[i];
        cplx pw = kin;
        for (int m = 1; m <= mmax; ++m) {
            const cplx basis = ((m % 2 == 1) ? iu() : cplx(1.0)) * pw;
            A(2 * i, m - 1) = basis.real();
            A(2 * i + 1, m - 1) = basis.imag();
            pw *= kin;
        }
        b(2 * i) = fs[i].real();
        b(2 * i + 1) = fs[i].imag();
    }
    const Eigen::VectorXd a = A.colPivHouseholderQr().solve(b);
    tail.coeff.resize(mmax);
    for (int m = 1; m <= mmax; ++m)
        tail.coeff[m - 1] = ((m % 2 == 1) ? iu() : cplx(1.0)) * a(m - 1);
    return tail;
}

}  // namespace halfline::osc

#include "halfline/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace halfline {

namespace {

std::pair<std::vector<double>, std::vector<double>> compute_gl(int n) {
    // Newton iteration on P_n with the three-term recurrence.
    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {x, w};
}

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

std::vector<double> chebyshev_lobatto(int deg) {
    std::vector<double> tau(deg + 1);
    for (int j = 0; j <= deg; ++j) tau[j] = -std::cos(pi * j / deg);
    return tau;
}

std::vector<cplx> chebyshev_to_monomial(const std::vector<cplx>& samples) {
    const int deg = static_cast<int>(samples.size()) - 1;
    // Chebyshev coefficients from Lobatto samples (Clenshaw-Curtis weights).
    // Samples are ordered by ascending tau = -cos(j pi/deg), i.e. f_j = f(-cos(j pi/deg)).
    std::vector<cplx> a(deg + 1, cplx(0.0));
    for (int n = 0; n <= deg; ++n) {
        cplx s = 0.0;
        for (int j = 0; j <= deg; ++j) {
            const double tn = std::cos(n * pi * j / deg);  // T_n(cos(j pi/deg))
            // tau_j = -cos(j pi/deg) => T_n(tau_j) = (-1)^n T_n(cos(j pi / deg)).
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            cplx term = samples[j] * (sign * tn);
            if (j == 0 || j == deg) term *= 0.5;
            s += term;
        }
        a[n] = s * (2.0 / deg);
        if (n == 0 || n == deg) a[n] *= 0.5;
    }
    // Convert sum a_n T_n(tau) to monomials.
    std::vector<std::vector<double>> T(deg + 1);
    T[0] = {1.0};
    if (deg >= 1) T[1] = {0.0, 1.0};
    for (int n = 2; n <= deg; ++n) {
        T[n].assign(n + 1, 0.0);
        for (int j = 0; j < n; ++j) T[n][j + 1] += 2.0 * T[n - 1][j];
        for (std::size_t j = 0; j < T[n - 2].size(); ++j) T[n][j] -= T[n - 2][j];
    }
    std::vector<cplx> mono(deg + 1, cplx(0.0));
    for (int n = 0; n <= deg; ++n)
        for (std::size_t j = 0; j < T[n].size(); ++j) mono[j] += a[n] * T[n][j];
    return mono;
}

std::vector<ContourNode> omega2_boundary_quadrature(double s_max, int n) {
    if (s_max <= 0.0) throw ConfigError("omega2 quadrature: s_max must be positive");
    if (n < 4 || n % 2 != 0)
        throw ConfigError("omega2 quadrature: n must be even and >= 4");

    // Composite GL panels on [0, s_max]; panel count scales with n.
    const int per_panel = 12;
    const int panels = std::max(1, n / per_panel);
    const int order = n / panels + (n % panels ? 1 : 0);
    const auto& [gx, gw] = gauss_legendre(order);

    const cplx dir_out = std::polar(1.0, pi / 3.0);       // outgoing ray
    const cplx dir_in = std::polar(1.0, 2.0 * pi / 3.0);  // incoming ray

    std::vector<ContourNode> out;
    out.reserve(2 * static_cast<std::size_t>(panels) * order);
    const double w_panel = s_max / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = p * w_panel, half = 0.5 * w_panel;
        for (std::size_t j = 0; j < gx.size(); ++j) {
            const double sigma = a + half * (gx[j] + 1.0);
            const double wj = gw[j] * half;
            // incoming along 2pi/3 from infinity to 0: minus orientation
            out.push_back({sigma * dir_in, -wj * dir_in});
            // outgoing along pi/3 from 0 to infinity: plus orientation
            out.push_back({sigma * dir_out, wj * dir_out});
        }
    }
    return out;
}

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, double tol,
                      int max_depth) {
    struct Impl {
        const std::function<cplx(double)>& f;
        int max_depth;
        cplx rec(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol,
                 int depth) {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const cplx flm = f(lm), frm = f(rm);
            const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const cplx delta = left + right - whole;
            if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
                return left + right + delta / 15.0;
            return rec(a, m, fa, flm, fm, left, tol * 0.5, depth + 1) +
                   rec(m, b, fm, frm, fb, right, tol * 0.5, depth + 1);
        }
    };
    Impl impl{f, max_depth};
    const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return impl.rec(a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace halfline

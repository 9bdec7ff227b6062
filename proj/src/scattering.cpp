#include "halfline/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/parallel.hpp"
#include "halfline/quadrature.hpp"

namespace halfline::scat {

namespace {

/// Geometric panel edges on [0, extent]: fine near the origin.
std::vector<double> geometric_edges(double extent, int panels, double ratio) {
    std::vector<double> e(panels + 1);
    const double denom = std::pow(ratio, panels) - 1.0;
    for (int j = 0; j <= panels; ++j) e[j] = extent * (std::pow(ratio, j) - 1.0) / denom;
    e.front() = 0.0;
    e.back() = extent;
    return e;
}

/// Builds a LineQuad sampling the amplitude in parallel over all nodes.
osc::LineQuad build_line_parallel(cplx dir, double orient, std::vector<double> edges, int degree,
                                  const std::function<cplx(cplx)>& amplitude) {
    osc::LineQuad lq;
    lq.dir = dir;
    lq.orient = orient;
    lq.edges = std::move(edges);
    lq.degree = degree;
    const auto tau = chebyshev_lobatto(degree);
    const std::size_t panels = lq.edges.size() - 1;
    lq.samples.assign(panels, std::vector<cplx>(tau.size()));
    parallel_for(panels * tau.size(), [&](std::size_t idx) {
        const std::size_t p = idx / tau.size(), j = idx % tau.size();
        const double a = lq.edges[p], b = lq.edges[p + 1];
        const double sigma = 0.5 * (a + b) + 0.5 * (b - a) * tau[j];
        lq.samples[p][j] = amplitude(sigma * dir);
    });
    lq.refresh();
    return lq;
}

/// Collect (k, f) pairs from panel samples with |sigma| >= sigma_min.
void collect_fit_samples(const osc::LineQuad& lq, double sigma_min, std::vector<cplx>& ks,
                         std::vector<cplx>& fs) {
    const auto tau = chebyshev_lobatto(lq.degree);
    for (std::size_t p = 0; p + 1 < lq.edges.size(); ++p) {
        const double a = lq.edges[p], b = lq.edges[p + 1];
        for (std::size_t j = 0; j < tau.size(); ++j) {
            const double sigma = 0.5 * (a + b) + 0.5 * (b - a) * tau[j];
            if (sigma >= sigma_min) {
                ks.push_back(sigma * lq.dir);
                fs.push_back(lq.samples[p][j]);
            }
        }
    }
}

}  // namespace

Forward::Forward(const ProblemConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    u_ = cfg_.u();
    bt_ = lax::boundary_triplet(cfg_);
    x_max_ = cfg_.x_max_auto ? std::max(8.0, u_.decay_point(1e-12, cfg_.x_max)) : cfg_.x_max;
    if (cfg_.infinite_T) {
        if (cfg_.t_eff_auto) {
            double te = 8.0;
            te = std::max(te, bt_.q.decay_point(1e-12, cfg_.t_eff));
            te = std::max(te, bt_.qx.decay_point(1e-12, cfg_.t_eff));
            te = std::max(te, bt_.qxx.decay_point(1e-12, cfg_.t_eff));
            T_eff_ = te;
        } else {
            T_eff_ = cfg_.t_eff;
        }
    } else {
        T_eff_ = cfg_.T;
    }
}

std::pair<cplx, cplx> Forward::s_plus(cplx k) const {
    return lax::chi_plus_column(u_, cfg_.lambda, k, 0.0, x_max_, cfg_.tol.step);
}

SMatrixSample Forward::s_matrix(double k) const {
    const auto [c1, c2] = lax::chi_plus_column(u_, cfg_.lambda, k, 0.0, x_max_, cfg_.tol.step);
    const auto [x1, x2] = lax::chi_minus_column(u_, cfg_.lambda, k, 0.0, x_max_, cfg_.tol.step);
    Mat2c psi{x1, c1, x2, c2};
    const cplx d = psi.det();
    if (std::abs(d) < 1e-10) throw SingularPsi("s_matrix: det Psi(0,0,k) ~ 0");
    SMatrixSample s;
    s.k = k;
    s.S = psi.inverse();
    return s;
}

cplx Forward::reflection(double k) const {
    const auto [s1p, s2p] = s_plus(k);
    if (std::abs(s2p) <= cfg_.tol.root)
        throw RealZeroOfS2("reflection: s2+ vanishes on the real axis");
    // s2-(k) = lambda conj(s1+(k)) for real k.
    return -cplx(cfg_.lambda) * std::conj(s1p) / s2p;
}

PMatrixSample Forward::p_matrix(cplx k) const {
    const auto hp = lax::hat_psi(0.0, bt_, cfg_.lambda, k, T_eff_, cfg_.tol.step);
    PMatrixSample p;
    p.k = k;
    p.P = hp.W;
    p.minus_certified = hp.minus_certified;
    p.plus_certified = hp.plus_certified;
    return p;
}

std::pair<cplx, cplx> Forward::p_minus(cplx k) const {
    const auto p = p_matrix(k);
    return {p.p1m(), p.p2m()};
}

std::pair<cplx, cplx> Forward::p_plus(cplx k) const {
    const auto p = p_matrix(k);
    return {p.p1p(), p.p2p()};
}

RMatrixSample Forward::r_matrix(double k) const {
    const auto s = s_matrix(k);
    const auto p = p_matrix(k);
    RMatrixSample r;
    r.k = k;
    r.R = s.S * p.P;
    return r;
}

cplx Forward::r1_minus(cplx k) const {
    const auto [s1p, s2p] = s_plus(k);
    const auto [p1m, p2m] = p_minus(k);
    return p1m * s2p - p2m * s1p;
}

cplx Forward::c_value(cplx k) const {
    const auto [s1p, s2p] = s_plus(k);
    const auto [p1m, p2m] = p_minus(k);
    const cplx r1m = p1m * s2p - p2m * s1p;
    if (std::abs(s2p * r1m) < 1e-8)
        throw NearPole("c_value: near a zero of s2+ r1-");
    return p2m / (s2p * r1m);
}

cplx Forward::rho_on_axis(double k) const {
    const auto r = r_matrix(k);
    return r.r2m() / r.r1m();
}

std::pair<cplx, cplx> Forward::global_relation_sides(cplx k, double t0) const {
    const auto [s1p, s2p] = s_plus(k);
    const auto [p1p, p2p] = p_plus(k);
    const cplx lhs = s2p * p1p - s1p * p2p;

    // Independent route: r1+ = det[Y^+, Psi^+](0, t0) with Y^+(0,t0) the
    // hat-psi plus column and Psi^+(0,t0) the t-propagated (s1+, s2+).
    const auto hp = lax::hat_psi(t0, bt_, cfg_.lambda, k, T_eff_, cfg_.tol.step);
    const Mat2c prop = lax::hat_phi(t0, bt_, cfg_.lambda, k, cfg_.tol.step);
    const cplx psi1 = prop.a11 * s1p + prop.a12 * s2p;
    const cplx psi2 = prop.a21 * s1p + prop.a22 * s2p;
    const cplx rhs = hp.W.a12 * psi2 - hp.W.a22 * psi1;
    return {lhs, rhs};
}

double Forward::global_relation_residual(const std::vector<cplx>& grid, double t0) const {
    double worst = 0.0;
    std::vector<double> res(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const auto [lhs, rhs] = global_relation_sides(grid[i], t0);
        res[i] = std::abs(lhs - rhs);
    });
    for (double r : res) worst = std::max(worst, r);
    return worst;
}

std::vector<cplx> Forward::eigenvalues_x(double box_k, double h_min) const {
    auto f = [this](cplx k) { return s_plus(k).second; };
    ZeroFindOptions opts;
    opts.tol_root = cfg_.tol.root;
    return find_zeros_rect(f, cplx(-box_k, h_min), cplx(box_k, box_k), opts);
}

std::vector<cplx> Forward::eigenvalues_bc(double r_min, double r_max) const {
    auto f = [this](cplx k) { return r1_minus(k); };
    ZeroFindOptions opts;
    opts.tol_root = cfg_.tol.root;
    return find_zeros_sector(f, pi / 3.0, 2.0 * pi / 3.0, r_min, r_max, opts);
}

cplx Forward::norming_x(cplx k_j) const {
    auto f = [this](cplx k) { return s_plus(k).second; };
    const double radius = std::clamp(0.05 * k_j.imag(), 1e-4, 0.2);
    const cplx dot = cauchy_derivative(f, k_j, radius);
    const double h = 1e-5 * std::max(1.0, std::abs(k_j));
    const cplx dot_fd = (f(k_j + h) - f(k_j - h)) / (2.0 * h);
    if (std::abs(dot - dot_fd) > 1e-4 * std::max(1.0, std::abs(dot)))
        throw NumericsError("norming_x: derivative routes disagree");
    const cplx s1p = s_plus(k_j).first;
    if (std::abs(s1p) < 1e-8)
        throw VanishingS1AtZero("norming_x: s1+(k_j) ~ 0 (numerical inconsistency)");
    return 1.0 / (iu() * s1p * dot);
}

cplx Forward::norming_bc(cplx z_j) const {
    const double d1 = std::abs((z_j * std::polar(1.0, -pi / 3.0)).imag());
    const double d2 = std::abs((z_j * std::polar(1.0, -2.0 * pi / 3.0)).imag());
    const double radius = std::clamp(0.05 * std::min(d1, d2), 1e-4, 0.15);

    auto cfun = [this](cplx k) { return c_value(k); };
    const cplx res = cauchy_residue(cfun, z_j, radius);
    const cplx m2_residue = -iu() * res;

    // Half the circle radius must move the residue by very little.
    const cplx res_half = cauchy_residue(cfun, z_j, 0.5 * radius);
    auto r1 = [this](cplx k) { return r1_minus(k); };
    const cplx dot = cauchy_derivative(r1, z_j, radius);
    const auto [s1p, s2p] = s_plus(z_j);
    const auto [p1m, p2m] = p_minus(z_j);
    const cplx m2_wronskian = p1m / (iu() * s1p * dot);
    const cplx m2_wronskian_b = p2m / (iu() * s2p * dot);

    const double scale = std::max({std::abs(m2_residue), std::abs(m2_wronskian), 1e-30});
    if (std::abs(m2_residue - m2_wronskian) > 1e-5 * scale ||
        std::abs(m2_residue - m2_wronskian_b) > 1e-5 * scale ||
        std::abs(-iu() * res_half - m2_residue) > 1e-5 * scale)
        throw InconsistentResidue("norming_bc: residue and Wronskian routes disagree");
    return m2_residue;
}

std::vector<std::pair<double, double>> Forward::nu_diagnostic(const std::vector<double>& ks) const {
    std::vector<double> sorted = ks;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> out(sorted.size());
    double prev = 0.0;
    bool first = true;
    for (std::size_t i = sorted.size(); i-- > 0;) {
        const auto s = s_matrix(sorted[i]);
        const auto p = p_matrix(sorted[i]);
        const cplx rho_p = p.p2p() / s.s2p();
        double nu = std::arg(rho_p);
        if (!first) {
            while (nu - prev > pi) nu -= 2.0 * pi;
            while (prev - nu > pi) nu += 2.0 * pi;
        }
        first = false;
        prev = nu;
        out[i] = {sorted[i], nu};
    }
    return out;
}

ScatteringData Forward::assemble() const {
    ScatteringData d;
    d.lambda = cfg_.lambda;
    d.T = cfg_.T;
    d.infinite_T = cfg_.infinite_T;
    d.t_eff = T_eff_;
    d.x_max = x_max_;

    const int deg = 12;
    // reflection on both half-lines
    {
        const int panels = 16;
        auto edges = geometric_edges(cfg_.k_max, panels, 1.33);
        auto ramp = [this](cplx k) { return reflection(k.real()); };
        d.r_pos = build_line_parallel(1.0, 1.0, edges, deg, ramp);
        d.r_neg = build_line_parallel(-1.0, -1.0, edges, deg, ramp);
    }
    // export grid
    d.r_grid = cfg_.k_grid();
    d.r_values.resize(d.r_grid.size());
    parallel_for(d.r_grid.size(),
                 [&](std::size_t i) { d.r_values[i] = reflection(d.r_grid[i]); });

    // boundary spectral function on the two rays
    {
        const int panels = std::max(6, cfg_.ray_nodes / (deg + 1));
        auto edges = geometric_edges(cfg_.ray_smax, panels, 1.35);
        auto camp = [this](cplx k) { return c_value(k); };
        d.c_out = build_line_parallel(std::polar(1.0, pi / 3.0), 1.0, edges, deg, camp);
        d.c_in = build_line_parallel(std::polar(1.0, 2.0 * pi / 3.0), -1.0, edges, deg, camp);
    }

    // power-law tails fitted on the outer halves
    {
        std::vector<cplx> ks, fs;
        collect_fit_samples(d.r_pos, 0.5 * cfg_.k_max, ks, fs);
        d.r_tail = osc::fit_power_tail(ks, fs, cfg_.k_max, 6);
    }
    {
        std::vector<cplx> ks, fs;
        collect_fit_samples(d.c_out, 0.5 * cfg_.ray_smax, ks, fs);
        collect_fit_samples(d.c_in, 0.5 * cfg_.ray_smax, ks, fs);
        d.c_tail = osc::fit_power_tail(ks, fs, cfg_.ray_smax, 6);
    }

    // discrete spectrum
    const double box = 4.0, h_min = 1e-3;
    d.eigenvalues_x = eigenvalues_x(box, h_min);
    for (const cplx& kj : d.eigenvalues_x) d.norming_x.push_back(norming_x(kj));
    d.eigenvalues_bc = eigenvalues_bc(0.05, box);
    for (const cplx& zj : d.eigenvalues_bc) d.norming_bc.push_back(norming_bc(zj));

    // measured symmetry defects
    double dr = 0.0;
    for (std::size_t i = 0; i < d.r_grid.size(); ++i) {
        const double k = d.r_grid[i];
        const std::size_t mirror = d.r_grid.size() - 1 - i;
        dr = std::max(dr, std::abs(d.r_values[i] - std::conj(d.r_values[mirror])));
    }
    d.defect_r_symmetry = dr;
    double dc = 0.0;
    for (std::size_t p = 0; p < d.c_out.samples.size(); ++p)
        for (std::size_t j = 0; j < d.c_out.samples[p].size(); ++j)
            dc = std::max(dc,
                          std::abs(d.c_in.samples[p][j] - std::conj(d.c_out.samples[p][j])));
    d.defect_c_symmetry = dc;
    auto pairing = [](const std::vector<cplx>& zs) {
        double worst = 0.0;
        for (const cplx& z : zs) {
            double best = 1e300;
            for (const cplx& w : zs) best = std::min(best, std::abs(-std::conj(z) - w));
            worst = std::max(worst, best);
        }
        return worst;
    };
    d.defect_pairing = std::max(pairing(d.eigenvalues_x), pairing(d.eigenvalues_bc));
    return d;
}

}  // namespace halfline::scat

#include "halfline/verify.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "halfline/laxpair.hpp"
#include "halfline/region.hpp"

namespace halfline::verify {

using nlohmann::ordered_json;

QSource QSource::from_soliton(const Soliton& s) {
    QSource src;
    src.q = [s](double x, double t) { return s.q(x, t); };
    src.qx = [s](double x, double t) { return s.qx(x, t); };
    src.qxx = [s](double x, double t) { return s.qxx(x, t); };
    return src;
}

double pde_residual(const marchenko::SolutionGrid& grid, int lambda) {
    const std::size_t nx = grid.x_nodes.size(), nt = grid.t_nodes.size();
    if (nx < 9) throw GridTooCoarse("pde_residual: need >= 7 interior x points");
    if (nt < 3) throw GridTooCoarse("pde_residual: need >= 3 time levels");
    const double hx = grid.x_nodes[1] - grid.x_nodes[0];
    const double ht = grid.t_nodes[1] - grid.t_nodes[0];

    double worst = 0.0;
    for (std::size_t it = 1; it + 1 < nt; ++it) {
        for (std::size_t ix = 3; ix + 3 < nx; ++ix) {
            const double qt = (grid.at(ix, it + 1) - grid.at(ix, it - 1)) / (2.0 * ht);
            const double q1 = (grid.at(ix - 2, it) / 12.0 - 2.0 * grid.at(ix - 1, it) / 3.0 +
                               2.0 * grid.at(ix + 1, it) / 3.0 - grid.at(ix + 2, it) / 12.0) /
                              hx;
            double q3 = 0.0;
            q3 += -13.0 / 8.0 * (grid.at(ix + 1, it) - grid.at(ix - 1, it));
            q3 += (grid.at(ix + 2, it) - grid.at(ix - 2, it));
            q3 += -1.0 / 8.0 * (grid.at(ix + 3, it) - grid.at(ix - 3, it));
            q3 /= hx * hx * hx;
            const double q = grid.at(ix, it);
            worst = std::max(worst, std::abs(qt + q3 - 6.0 * lambda * q * q * q1));
        }
    }
    return worst;
}

double roundtrip_initial(const ScatteringData& data, const ProblemConfig& cfg, Exec exec) {
    const marchenko::KernelField field(data);
    marchenko::KernelSliceOptions sopts;
    const auto slice = marchenko::KernelSlice::build(field, 0.0, sopts, exec);
    marchenko::SolveOptions opts;
    opts.nystrom = cfg.nystrom;
    opts.tol_solve = cfg.tol.solve;
    opts.kappa_min = field.kappa_min();

    const Profile u = cfg.u();
    const auto xs = cfg.x_grid.nodes();
    std::vector<double> err(xs.size(), 0.0);
    parallel_for(
        xs.size(),
        [&](std::size_t i) {
            const double q = marchenko::reconstruct_q(xs[i], slice, data.lambda, opts);
            err[i] = std::abs(q - u(xs[i]));
        },
        exec);
    return *std::max_element(err.begin(), err.end());
}

BoundaryRoundtrip roundtrip_boundary(const ScatteringData& data, const ProblemConfig& cfg,
                                     const lax::BoundaryTriplet& reference, Exec exec) {
    const marchenko::KernelField field(data);
    marchenko::SolveOptions opts;
    opts.nystrom = cfg.nystrom;
    opts.tol_solve = cfg.tol.solve;
    opts.kappa_min = field.kappa_min();
    marchenko::KernelSliceOptions sopts;

    const double h = (cfg.x_grid.count > 1)
                         ? (cfg.x_grid.max - cfg.x_grid.min) / (4.0 * (cfg.x_grid.count - 1))
                         : 0.025;
    const auto ts = cfg.t_grid.nodes();
    BoundaryRoundtrip out{0.0, 0.0, 0.0};
    for (double t : ts) {
        const auto slice = marchenko::KernelSlice::build(field, t, sopts, exec);
        double q[6];
        std::vector<double> qv(6, 0.0);
        parallel_for(
            6, [&](std::size_t j) { qv[j] = marchenko::reconstruct_q(j * h, slice, data.lambda, opts); },
            exec);
        for (int j = 0; j < 6; ++j) q[j] = qv[j];
        const double d0 = q[0];
        const double d1 =
            (-25.0 * q[0] + 48.0 * q[1] - 36.0 * q[2] + 16.0 * q[3] - 3.0 * q[4]) / (12.0 * h);
        const double d2 = (45.0 * q[0] - 154.0 * q[1] + 214.0 * q[2] - 156.0 * q[3] +
                           61.0 * q[4] - 10.0 * q[5]) /
                          (12.0 * h * h);
        out.e0 = std::max(out.e0, std::abs(d0 - reference.q(t)));
        out.e1 = std::max(out.e1, std::abs(d1 - reference.qx(t)));
        out.e2 = std::max(out.e2, std::abs(d2 - reference.qxx(t)));
    }
    return out;
}

namespace {

Mat2c columns(std::pair<cplx, cplx> minus, std::pair<cplx, cplx> plus) {
    return {minus.first, plus.first, minus.second, plus.second};
}

std::pair<cplx, cplx> mat_col(const Mat2c& m, bool plus) {
    return plus ? m.col_plus() : m.col_minus();
}

std::pair<cplx, cplx> matvec(const Mat2c& m, std::pair<cplx, cplx> v) {
    return {m.a11 * v.first + m.a12 * v.second, m.a21 * v.first + m.a22 * v.second};
}

std::pair<cplx, cplx> scale(std::pair<cplx, cplx> v, cplx s) {
    return {v.first * s, v.second * s};
}

}  // namespace

JumpSample rh_jump_residual(const QSource& src, const scat::Forward& fwd,
                            const ScatteringData& data, cplx k, double x, double t) {
    const Region reg = classify_region(k);
    if (reg == Region::Omega1 || reg == Region::Omega2 || reg == Region::Omega3 ||
        reg == Region::Omega4 || reg == Region::Omega5 || reg == Region::Omega6 ||
        reg == Region::Origin)
        throw ConfigError("rh_jump_residual: k must lie on the contour");

    const int lambda = fwd.config().lambda;
    const double tol = fwd.config().tol.step;
    const Profile qslice = src.x_slice(t);
    const auto& bt = fwd.boundary();

    const cplx theta = k * (x + 4.0 * k * k * t);
    const cplx eip = std::exp(iu() * theta), eim = 1.0 / eip;

    JumpSample js;
    js.k = k;
    js.x = x;
    js.t = t;

    const auto psi = lax::jost_psi_at(x, t, qslice, lambda, k, fwd.x_max(), tol);

    if (reg == Region::SigmaRealAxis) {
        const Mat2c phi = lax::phi_slice(x, qslice, lambda, k, tol) *
                          lax::hat_phi(t, bt, lambda, k, tol);
        const cplx s2p = fwd.s_plus(k).second;
        const cplx s1m = std::conj(fwd.s_plus(std::conj(k)).second);
        js.M_plus = columns(scale(mat_col(phi, false), eip / s2p), scale(mat_col(psi.W, true), eim));
        js.M_minus = columns(scale(mat_col(psi.W, false), eip), scale(mat_col(phi, true), eim / s1m));
        const cplx r = data.r_at(k.real());
        js.J = Mat2c{1.0, cplx(lambda) * std::conj(r) * eim * eim, -r * eip * eip,
                     1.0 - cplx(lambda) * std::norm(r)};
    } else if (reg == Region::SigmaRayPi3 || reg == Region::SigmaRay2Pi3) {
        const Mat2c phi_x = lax::phi_slice(x, qslice, lambda, k, tol);
        const Mat2c phi = phi_x * lax::hat_phi(t, bt, lambda, k, tol);
        const auto hps = lax::hat_psi(t, bt, lambda, k, fwd.T_eff(), tol);
        const Mat2c Y = phi_x * hps.W;
        const cplx s2p = fwd.s_plus(k).second;
        const cplx r1m = fwd.r1_minus(k);
        js.M_plus = columns(scale(mat_col(phi, false), eip / s2p), scale(mat_col(psi.W, true), eim));
        js.M_minus = columns(scale(mat_col(Y, false), eip / r1m), scale(mat_col(psi.W, true), eim));
        const cplx c = data.c_at_ray(std::abs(k), reg == Region::SigmaRayPi3);
        js.J = Mat2c{1.0, 0.0, c * eip * eip, 1.0};
    } else {
        // lower rays: arg k = 4pi/3 or 5pi/3
        const Mat2c phi_x = lax::phi_slice(x, qslice, lambda, k, tol);
        const Mat2c phi = phi_x * lax::hat_phi(t, bt, lambda, k, tol);
        const auto hps = lax::hat_psi(t, bt, lambda, k, fwd.T_eff(), tol);
        const Mat2c Y = phi_x * hps.W;
        const cplx s1m = std::conj(fwd.s_plus(std::conj(k)).second);
        const cplx r2p = std::conj(fwd.r1_minus(std::conj(k)));
        js.M_plus = columns(scale(mat_col(psi.W, false), eip), scale(mat_col(Y, true), eim / r2p));
        js.M_minus = columns(scale(mat_col(psi.W, false), eip), scale(mat_col(phi, true), eim / s1m));
        // c(conj k) lives on the opposite upper ray
        const cplx c_conj = data.c_at_ray(std::abs(k), reg == Region::SigmaRay5Pi3);
        js.J = Mat2c{1.0, -cplx(lambda) * std::conj(c_conj) * eim * eim, 0.0, 1.0};
    }

    js.residual = (js.M_minus - js.M_plus * js.J).norm();
    js.det_J_defect = std::abs(js.J.det() - 1.0);
    return js;
}

JumpSample t_rh_jump_residual(const scat::Forward& fwd, double k, double t) {
    const int lambda = fwd.config().lambda;
    const double tol = fwd.config().tol.step;
    const auto& bt = fwd.boundary();

    const Mat2c hphi = lax::hat_phi(t, bt, lambda, k, tol);
    const auto hpsi = lax::hat_psi(t, bt, lambda, k, fwd.T_eff(), tol);
    const auto P = fwd.p_matrix(k);

    const cplx k3 = cplx(k) * k * k;
    const cplx em = std::exp(-4.0 * iu() * k3 * t), ep = 1.0 / em;

    JumpSample js;
    js.k = k;
    js.t = t;
    js.M_plus = columns(scale(mat_col(hpsi.W, true), em / P.p2p()), scale(mat_col(hphi, false), ep));
    js.M_minus = columns(scale(mat_col(hphi, true), em), scale(mat_col(hpsi.W, false), ep / P.p1m()));
    const cplx pm = P.p2m() / P.p1m();
    const cplx pp = P.p1p() / P.p2p();
    js.J = Mat2c{1.0, pm * ep, -pp * em, 1.0 - pm * pp};
    js.residual = (js.M_minus - js.M_plus * js.J).norm();
    js.det_J_defect = std::abs(js.J.det() - 1.0);
    return js;
}

std::string Report::to_json_text() const {
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json e;
        e["name"] = c.name;
        e["measured"] = c.measured;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        arr.push_back(e);
    }
    j["checks"] = arr;
    j["overall"] = overall;
    return j.dump(2) + "\n";
}

}  // namespace halfline::verify

#include "halfline/laxpair.hpp"

#include <cmath>

#include "halfline/ode.hpp"

namespace halfline::lax {

Mat2c q_matrix(double qval, int lambda) {
    return {0.0, qval, cplx(lambda) * qval, 0.0};
}

Mat2c u_matrix(double qval, int lambda, cplx k) {
    const cplx ik = iu() * k;
    return {-ik, qval, cplx(lambda) * qval, ik};
}

Mat2c v_matrix(double qval, double qx, double qxx, int lambda, cplx k) {
    const double l = lambda;
    const cplx ik = iu() * k;
    const cplx ik3 = iu() * k * k * k;
    const double q3 = qval * qval * qval;
    Mat2c V;
    V.a11 = -2.0 * ik * l * qval * qval - 4.0 * ik3;
    V.a12 = 2.0 * l * q3 - qxx + 2.0 * ik * qx + 4.0 * k * k * qval;
    V.a21 = 2.0 * q3 - l * qxx - 2.0 * ik * l * qx + 4.0 * l * k * k * qval;
    V.a22 = 2.0 * ik * l * qval * qval + 4.0 * ik3;
    return V;
}

namespace {

using State4 = std::array<cplx, 4>;
using State2 = std::array<cplx, 2>;

inline State4 to_state(const Mat2c& m) { return {m.a11, m.a12, m.a21, m.a22}; }
inline Mat2c to_mat(const State4& s) { return {s[0], s[1], s[2], s[3]}; }

/// hat-Q(0,t,k) = V + 4 i k^3 sigma3: the t-equation coefficient with the
/// free rotation removed.
inline Mat2c qhat_matrix(double v, double v1, double v2, int lambda, cplx k) {
    Mat2c m = v_matrix(v, v1, v2, lambda, k);
    const cplx ik3 = iu() * k * k * k;
    m.a11 += 4.0 * ik3;
    m.a22 -= 4.0 * ik3;
    return m;
}

}  // namespace

Mat2c integrate_x(const Profile& q_profile, int lambda, cplx k, double x_from, double x_to,
                  const Mat2c& W0, double step_tol) {
    const double l = lambda;
    auto rhs = [&](double x, const State4& y, State4& dy) {
        const double q = q_profile(x);
        const cplx ik = iu() * k;
        // U = [[-ik, q], [l q, ik]]; dW = U W columnwise
        dy[0] = -ik * y[0] + q * y[2];
        dy[1] = -ik * y[1] + q * y[3];
        dy[2] = l * q * y[0] + ik * y[2];
        dy[3] = l * q * y[1] + ik * y[3];
    };
    const State4 out = integrate_rk45<4>(rhs, x_from, x_to, to_state(W0), step_tol, step_tol);
    Mat2c W = to_mat(out);
    if (!is_finite(W)) throw StepFailure("integrate_x produced non-finite state");
    return W;
}

Mat2c integrate_t(const CoeffTriplet& bt, int lambda, cplx k, double t_from, double t_to,
                  const Mat2c& W0, double step_tol) {
    auto rhs = [&](double t, const State4& y, State4& dy) {
        const Mat2c V = v_matrix(bt.q(t), bt.qx(t), bt.qxx(t), lambda, k);
        dy[0] = V.a11 * y[0] + V.a12 * y[2];
        dy[1] = V.a11 * y[1] + V.a12 * y[3];
        dy[2] = V.a21 * y[0] + V.a22 * y[2];
        dy[3] = V.a21 * y[1] + V.a22 * y[3];
    };
    const State4 out = integrate_rk45<4>(rhs, t_from, t_to, to_state(W0), step_tol, step_tol);
    Mat2c W = to_mat(out);
    if (!is_finite(W)) throw StepFailure("integrate_t produced non-finite state");
    return W;
}

std::pair<cplx, cplx> chi_plus_column(const Profile& q_profile, int lambda, cplx k, double x,
                                      double x_max, double step_tol) {
    // chi1' = -2ik chi1 + q chi2, chi2' = lambda q chi1; (0,1) at x_max.
    // Stable integrated inward for Im k >= 0.
    const double l = lambda;
    const cplx m2ik = -2.0 * iu() * k;
    auto rhs = [&](double s, const State2& y, State2& dy) {
        const double q = q_profile(s);
        dy[0] = m2ik * y[0] + q * y[1];
        dy[1] = l * q * y[0];
    };
    const State2 out = integrate_rk45<2>(rhs, x_max, x, State2{0.0, 1.0}, step_tol, step_tol);
    if (!is_finite(out[0]) || !is_finite(out[1]))
        throw StepFailure("chi_plus_column produced non-finite state");
    return {out[0], out[1]};
}

std::pair<cplx, cplx> chi_minus_column(const Profile& q_profile, int lambda, cplx k, double x,
                                       double x_max, double step_tol) {
    // xi1' = q xi2, xi2' = 2ik xi2 + lambda q xi1; (1,0) at x_max.
    // Stable integrated inward for Im k <= 0.
    const double l = lambda;
    const cplx p2ik = 2.0 * iu() * k;
    auto rhs = [&](double s, const State2& y, State2& dy) {
        const double q = q_profile(s);
        dy[0] = q * y[1];
        dy[1] = p2ik * y[1] + l * q * y[0];
    };
    const State2 out = integrate_rk45<2>(rhs, x_max, x, State2{1.0, 0.0}, step_tol, step_tol);
    if (!is_finite(out[0]) || !is_finite(out[1]))
        throw StepFailure("chi_minus_column produced non-finite state");
    return {out[0], out[1]};
}

JostResult jost_psi_at(double x, double t_label, const Profile& q_slice, int lambda, cplx k,
                       double x_max, double step_tol) {
    JostResult res;
    const cplx k3 = k * k * k;
    const cplx ph_plus = std::exp(iu() * (k * x + 4.0 * k3 * t_label));
    const cplx ph_minus = 1.0 / ph_plus;

    const bool want_plus = k.imag() >= -1e-14;
    const bool want_minus = k.imag() <= 1e-14;

    if (want_plus) {
        auto [c1, c2] = chi_plus_column(q_slice, lambda, k, x, x_max, step_tol);
        res.W.a12 = c1 * ph_plus;
        res.W.a22 = c2 * ph_plus;
    } else {
        res.W.a12 = 0.0;
        res.W.a22 = ph_plus;
        res.plus_certified = false;
    }
    if (want_minus) {
        auto [c1, c2] = chi_minus_column(q_slice, lambda, k, x, x_max, step_tol);
        res.W.a11 = c1 * ph_minus;
        res.W.a21 = c2 * ph_minus;
    } else {
        res.W.a11 = ph_minus;
        res.W.a21 = 0.0;
        res.minus_certified = false;
    }
    return res;
}

Mat2c phi_at_t0(double x, const Profile& u_profile, int lambda, cplx k, double step_tol) {
    return integrate_x(u_profile, lambda, k, 0.0, x, Mat2c::identity(), step_tol);
}

Mat2c phi_slice(double x, const Profile& q_slice, int lambda, cplx k, double step_tol) {
    return integrate_x(q_slice, lambda, k, 0.0, x, Mat2c::identity(), step_tol);
}

namespace {

/// Peeled t-equation: M' = [[a, b e^{8ik^3 t}], [c e^{-8ik^3 t}, -a]] M with
/// (a, b, c) the entries of hat-Q(0,t,k). Exactly bounded on Sigma.
Mat2c integrate_t_peeled(const CoeffTriplet& bt, int lambda, cplx k, double t_from, double t_to,
                         const Mat2c& M0, double step_tol) {
    const cplx e8 = 8.0 * iu() * k * k * k;
    auto rhs = [&](double t, const State4& y, State4& dy) {
        const Mat2c Q = qhat_matrix(bt.q(t), bt.qx(t), bt.qxx(t), lambda, k);
        const cplx ep = std::exp(e8 * t);
        const cplx b = Q.a12 * ep;
        const cplx c = Q.a21 / ep;
        dy[0] = Q.a11 * y[0] + b * y[2];
        dy[1] = Q.a11 * y[1] + b * y[3];
        dy[2] = c * y[0] + Q.a22 * y[2];
        dy[3] = c * y[1] + Q.a22 * y[3];
    };
    const State4 out = integrate_rk45<4>(rhs, t_from, t_to, to_state(M0), step_tol, step_tol);
    return to_mat(out);
}

}  // namespace

Mat2c hat_phi(double t, const CoeffTriplet& bt, int lambda, cplx k, double step_tol) {
    const Mat2c M = integrate_t_peeled(bt, lambda, k, 0.0, t, Mat2c::identity(), step_tol);
    const cplx k3 = k * k * k;
    return Mat2c::exp_msigma3(4.0 * iu() * k3 * t) * M;
}

HatPsiResult hat_psi(double t, const CoeffTriplet& bt, int lambda, cplx k, double T_eff,
                     double step_tol) {
    HatPsiResult res;
    const cplx k3 = k * k * k;
    const double im3 = k3.imag();
    const double on_sigma_tol = 1e-12 * std::max(1.0, std::abs(k3));

    if (t > T_eff) {
        res.W = Mat2c::exp_msigma3(4.0 * iu() * k3 * t);
        return res;
    }

    if (std::abs(im3) <= on_sigma_tol) {
        const Mat2c M = integrate_t_peeled(bt, lambda, k, T_eff, t, Mat2c::identity(), step_tol);
        res.W = Mat2c::exp_msigma3(4.0 * iu() * k3 * t) * M;
        return res;
    }

    // Off Sigma: integrate each column unpeeled in rescaled variables.
    // Column "-" is the one normalized to e^{-4ik^3 t}(1,0)^T; its free mode
    // decays in t exactly when Im k^3 < 0, which makes the inward sweep stable.
    auto rhs = [&](double s, const State2& y, State2& dy) {
        const Mat2c V = v_matrix(bt.q(s), bt.qx(s), bt.qxx(s), lambda, k);
        dy[0] = V.a11 * y[0] + V.a12 * y[1];
        dy[1] = V.a21 * y[0] + V.a22 * y[1];
    };
    const cplx phase_T = std::exp(-4.0 * iu() * k3 * T_eff);

    {
        // minus column: v(T) = (1,0) * e^{-4ik^3T}; rescaled by e^{+4ik^3T}.
        const State2 out = integrate_rk45<2>(rhs, T_eff, t, State2{1.0, 0.0}, step_tol, step_tol);
        res.W.a11 = out[0] * phase_T;
        res.W.a21 = out[1] * phase_T;
        res.minus_certified = (im3 < 0.0);
    }
    {
        // plus column: v(T) = (0,1) * e^{+4ik^3T}.
        const State2 out = integrate_rk45<2>(rhs, T_eff, t, State2{0.0, 1.0}, step_tol, step_tol);
        res.W.a12 = out[0] / phase_T;
        res.W.a22 = out[1] / phase_T;
        res.plus_certified = (im3 > 0.0);
    }
    if (!is_finite(res.W)) throw StepFailure("hat_psi produced non-finite state");
    return res;
}

}  // namespace halfline::lax

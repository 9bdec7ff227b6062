#pragma once

#include <functional>

#include "halfline/config.hpp"
#include "halfline/profile.hpp"
#include "halfline/types.hpp"

namespace halfline::lax {

/// Boundary triplet (q, q_x, q_xx at x = 0) or any x-slice of coefficients
/// for the t-equation.
struct CoeffTriplet {
    Profile q, qx, qxx;
};

using BoundaryTriplet = CoeffTriplet;

inline BoundaryTriplet boundary_triplet(const ProblemConfig& cfg) {
    return {cfg.v(), cfg.v1(), cfg.v2()};
}

// --- coefficient matrices ---------------------------------------------------

/// Off-diagonal potential matrix [[0, q], [lambda q, 0]].
Mat2c q_matrix(double qval, int lambda);

/// x-equation coefficient U = Q - i k sigma3 (trace free).
Mat2c u_matrix(double qval, int lambda, cplx k);

/// t-equation coefficient V assembled from (q, q_x, q_xx); trace free.
Mat2c v_matrix(double qval, double qx, double qxx, int lambda, cplx k);

// --- raw propagators ---------------------------------------------------------

/// Integrates W' = U(x)W from x_from to x_to (either direction) with the
/// adaptive RK controller; preserves det W to ~10*step_tol.
Mat2c integrate_x(const Profile& q_profile, int lambda, cplx k, double x_from, double x_to,
                  const Mat2c& W0, double step_tol);

/// Integrates W_t = V(0,t)W between t_from and t_to.
Mat2c integrate_t(const CoeffTriplet& bt, int lambda, cplx k, double t_from, double t_to,
                  const Mat2c& W0, double step_tol);

// --- basic solutions ----------------------------------------------------------

struct JostResult {
    Mat2c W;
    bool minus_certified = true;  // first column
    bool plus_certified = true;   // second column
};

/// Jost solution of the x-equation at a fixed time slice, normalized to
/// exp(-i k x sigma3) exp(-4 i k^3 t sigma3) as x -> infinity. For real k the
/// full matrix is returned; off the axis only the column analytic in the
/// corresponding half-plane is certified.
JostResult jost_psi_at(double x, double t_label, const Profile& q_slice, int lambda, cplx k,
                       double x_max, double step_tol);

/// Column (psi_1^+, psi_2^+) e^{ikx} of the Jost solution at t = 0, i.e. the
/// peeled system integrated inward from x_max. Returns (chi1, chi2)(x).
/// At x = 0 these are the analytic scattering entries (s1+, s2+).
std::pair<cplx, cplx> chi_plus_column(const Profile& q_profile, int lambda, cplx k, double x,
                                      double x_max, double step_tol);

/// Mirror column certified in the lower half-plane: (psi_1^-, psi_2^-) e^{-ikx}.
std::pair<cplx, cplx> chi_minus_column(const Profile& q_profile, int lambda, cplx k, double x,
                                       double x_max, double step_tol);

/// Identity-normalized solution of the x-equation at t = 0: Phi(x,0,k),
/// Phi(0,0,k) = I; entire in k.
Mat2c phi_at_t0(double x, const Profile& u_profile, int lambda, cplx k, double step_tol);

/// phi(x, t, k): x-equation solution on the slice q(.,t) with phi(0,t,k) = I.
Mat2c phi_slice(double x, const Profile& q_slice, int lambda, cplx k, double step_tol);

/// hat-phi(t, k): t-equation solution at x = 0 with hat-phi(0,k) = I,
/// integrated in peeled variables (exact on Sigma, fine for moderate Im k^3).
Mat2c hat_phi(double t, const CoeffTriplet& bt, int lambda, cplx k, double step_tol);

struct HatPsiResult {
    Mat2c W;
    bool minus_certified = true;
    bool plus_certified = true;
};

/// hat-psi(t, k): t-equation solution at x = 0 normalized to
/// exp(-4 i k^3 t sigma3) for t >= T_eff. On Sigma both columns are computed
/// in peeled form; off Sigma each column is integrated separately in the
/// stable (unpeeled, rescaled) direction and the opposite column is flagged.
HatPsiResult hat_psi(double t, const CoeffTriplet& bt, int lambda, cplx k, double T_eff,
                     double step_tol);

}  // namespace halfline::lax

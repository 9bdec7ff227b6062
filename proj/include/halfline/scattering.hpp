#pragma once

#include <vector>

#include "halfline/config.hpp"
#include "halfline/laxpair.hpp"
#include "halfline/scattering_data.hpp"
#include "halfline/types.hpp"
#include "halfline/zerofind.hpp"

namespace halfline::scat {

/// S(k) = Psi^{-1}(0,0,k) with the named entry convention
/// S = [[s2+, -s1+], [-s2-, s1-]].
struct SMatrixSample {
    cplx k;
    Mat2c S;
    cplx s2p() const { return S.a11; }
    cplx s1p() const { return -S.a12; }
    cplx s2m() const { return -S.a21; }
    cplx s1m() const { return S.a22; }
};

/// P(k) = Y(0,0,k) = [[p1-, p1+], [p2-, p2+]].
struct PMatrixSample {
    cplx k;
    Mat2c P;
    bool minus_certified = true, plus_certified = true;
    cplx p1m() const { return P.a11; }
    cplx p1p() const { return P.a12; }
    cplx p2m() const { return P.a21; }
    cplx p2p() const { return P.a22; }
};

/// R(k) = S(k) P(k) = [[r1-, r1+], [r2-, r2+]].
struct RMatrixSample {
    cplx k;
    Mat2c R;
    cplx r1m() const { return R.a11; }
    cplx r1p() const { return R.a12; }
    cplx r2m() const { return R.a21; }
    cplx r2p() const { return R.a22; }
};

/// Direct-scattering context: owns the data profiles and effective
/// truncations, exposes every spectral function. All evaluators are pure and
/// safe to call concurrently.
class Forward {
  public:
    explicit Forward(const ProblemConfig& cfg);

    const ProblemConfig& config() const { return cfg_; }
    double x_max() const { return x_max_; }
    double T_eff() const { return T_eff_; }
    const Profile& u() const { return u_; }
    const lax::BoundaryTriplet& boundary() const { return bt_; }

    /// Analytic column entries (s1+, s2+)(k) for Im k >= 0.
    std::pair<cplx, cplx> s_plus(cplx k) const;

    /// Full scattering matrix at real k.
    SMatrixSample s_matrix(double k) const;

    /// Reflection coefficient r(k) = -s2-(k)/s2+(k), real k.
    cplx reflection(double k) const;

    /// P(k): both columns on Sigma; off Sigma the non-certified column is
    /// still computed (entire for finite T) but flagged.
    PMatrixSample p_matrix(cplx k) const;

    /// Certified minus column (p1-, p2-) for Im k^3 <= 0 (and on Sigma).
    std::pair<cplx, cplx> p_minus(cplx k) const;
    std::pair<cplx, cplx> p_plus(cplx k) const;

    RMatrixSample r_matrix(double k) const;

    /// r1-(k) = p1-(k) s2+(k) - p2-(k) s1+(k); certified on closed Omega2
    /// (T = inf) or C+ (finite T within the stable-exponent range).
    cplx r1_minus(cplx k) const;

    /// c(k) = p2- / (s2+ r1-), the boundary spectral function.
    cplx c_value(cplx k) const;

    /// rho(k) = r2-(k)/r1-(k) on the real axis.
    cplx rho_on_axis(double k) const;

    /// max_k | s2+ p1+ - s1+ p2+ - r1+ | with the right-hand side evaluated
    /// from the time-propagated Wronskian at t0 (independent route).
    double global_relation_residual(const std::vector<cplx>& grid, double t0) const;
    /// Both routes at one point.
    std::pair<cplx, cplx> global_relation_sides(cplx k, double t0) const;

    /// Simple zeros of s2+ in the upper half-plane search box.
    std::vector<cplx> eigenvalues_x(double box_k, double h_min) const;
    /// Simple zeros of r1- strictly inside Omega2.
    std::vector<cplx> eigenvalues_bc(double r_min, double r_max) const;

    /// Norming coefficient at a zero k_j of s2+:
    /// m = [i s1+(k_j) s2+'(k_j)]^{-1}, derivative by Cauchy circle,
    /// cross-checked against centered differencing.
    cplx norming_x(cplx k_j) const;

    /// Norming coefficient at a zero z_j of r1-: residue route -i res c,
    /// cross-checked against p1-(z)[i s1+(z) r1-'(z)]^{-1}.
    cplx norming_bc(cplx z_j) const;

    /// nu(k) diagnostic: log(rho_+)/i with the branch continued from +infinity.
    std::vector<std::pair<double, double>> nu_diagnostic(const std::vector<double>& ks) const;

    /// Full assembly of the scattering data set.
    ScatteringData assemble() const;

  private:
    ProblemConfig cfg_;
    Profile u_;
    lax::BoundaryTriplet bt_;
    double x_max_ = 0.0;
    double T_eff_ = 0.0;
};

}  // namespace halfline::scat

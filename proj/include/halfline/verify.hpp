#pragma once

#include <functional>
#include <string>
#include <vector>

#include "halfline/config.hpp"
#include "halfline/marchenko.hpp"
#include "halfline/profile.hpp"
#include "halfline/scattering.hpp"
#include "halfline/scattering_data.hpp"
#include "halfline/types.hpp"

namespace halfline::verify {

/// A space-time field with enough derivatives for the Lax-pair coefficient
/// slices; the exact soliton provides one, a reconstructed grid another.
struct QSource {
    std::function<double(double, double)> q;    // q(x, t)
    std::function<double(double, double)> qx;   // d/dx
    std::function<double(double, double)> qxx;  // d2/dx2

    Profile x_slice(double t) const {
        auto f = q;
        return Profile([f, t](double x) { return f(x, t); });
    }
    lax::CoeffTriplet t_slice_at(double x) const {
        auto f0 = q, f1 = qx, f2 = qxx;
        return {Profile([f0, x](double t) { return f0(x, t); }),
                Profile([f1, x](double t) { return f1(x, t); }),
                Profile([f2, x](double t) { return f2(x, t); })};
    }
    static QSource from_soliton(const Soliton& s);
};

/// Max interior-lattice residual of q_t + q_xxx - 6 lambda q^2 q_x
/// (4th-order central in x, 2nd-order central in t).
double pde_residual(const marchenko::SolutionGrid& grid, int lambda);

/// Max |q(x,0) - u(x)| over the configured x-grid.
double roundtrip_initial(const ScatteringData& data, const ProblemConfig& cfg, Exec exec);

struct BoundaryRoundtrip {
    double e0, e1, e2;
};

/// Errors of the reconstructed boundary values q(0,t), q_x(0,t), q_xx(0,t)
/// against the reference triplet, via one-sided 4th-order stencils on a
/// refined sublattice near x = 0.
BoundaryRoundtrip roundtrip_boundary(const ScatteringData& data, const ProblemConfig& cfg,
                                     const lax::BoundaryTriplet& reference, Exec exec);

struct JumpSample {
    cplx k;
    double x = 0.0, t = 0.0;
    Mat2c M_plus, M_minus, J;
    double residual = 0.0;
    double det_J_defect = 0.0;
};

/// Residual of the sectional Riemann-Hilbert jump M- = M+ J at a contour
/// point, with the boundary values built directly on the contour from the
/// basic solutions of both Lax equations over the supplied field.
JumpSample rh_jump_residual(const QSource& src, const scat::Forward& fwd,
                            const ScatteringData& data, cplx k, double x, double t);

/// Residual of the time-equation jump N- = N+ J^t at real k.
JumpSample t_rh_jump_residual(const scat::Forward& fwd, double k, double t);

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::vector<Check> checks;
    bool overall = true;
    void add(const std::string& name, double measured, double tol) {
        checks.push_back({name, measured, tol, measured <= tol});
        overall = overall && checks.back().pass;
    }
    std::string to_json_text() const;
};

}  // namespace halfline::verify

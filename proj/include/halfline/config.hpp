#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfline/profile.hpp"
#include "halfline/types.hpp"

namespace halfline {

struct GridRange {
    double min = 0.0, max = 1.0;
    int count = 2;
    std::vector<double> nodes() const;
};

struct Tolerances {
    double step = 1e-11;   // ODE controller abs/rel tolerance
    double quad = 1e-10;   // quadrature target
    double root = 1e-12;   // zero finding
    double solve = 1e-9;   // linear-system residual target
};

struct NystromParams {
    int order = 10;          // GL nodes per panel (>= 8)
    double panel_width = 1.0;
};

/// Full problem description: equation sign, horizon, data functions, grids
/// and tolerances. Immutable after load/validate.
struct ProblemConfig {
    int lambda = -1;             // +1 or -1
    double T = 4.0;              // horizon; infinite_T overrides
    bool infinite_T = false;

    FunctionSpec u_spec, v_spec, v1_spec, v2_spec;

    double x_max = 30.0;         // truncation of the initial-data half-line
    bool x_max_auto = true;      // shrink/grow from profile decay
    double t_eff = 30.0;         // effective horizon when T = inf
    bool t_eff_auto = true;

    double k_max = 40.0;         // reflection sampling extent
    int k_count = 161;           // export grid size (symmetric, odd)
    double ray_smax = 12.0;      // boundary-ray quadrature extent
    int ray_nodes = 176;         // c samples per ray

    GridRange x_grid{0.0, 6.3, 64};
    GridRange t_grid{0.0, 4.0, 32};

    NystromParams nystrom;
    Tolerances tol;

    double horizon() const { return infinite_T ? t_eff : T; }
    std::vector<double> k_grid() const;

    Profile u() const { return u_spec.make(); }
    Profile v() const { return v_spec.make(); }
    Profile v1() const { return v1_spec.make(); }
    Profile v2() const { return v2_spec.make(); }

    void validate() const;

    static ProblemConfig from_json_file(const std::string& path);
    static ProblemConfig from_json_text(const std::string& text);
    std::string to_json_text() const;

    /// Canonical soliton setup used across tests: lambda=-1 trace data.
    static ProblemConfig soliton_case(double kappa, double x0, double T);
    /// Defocusing Gaussian with zero boundary data.
    static ProblemConfig gaussian_case(double amplitude, double center, double width, double T);
    /// All-zero data.
    static ProblemConfig zero_case(int lambda, double T);
};

}  // namespace halfline

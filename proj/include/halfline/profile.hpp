#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "halfline/types.hpp"

namespace halfline {

/// Natural cubic spline with zero extension beyond the last abscissa
/// (and before the first when it starts above 0).
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double deriv(double x) const;
    bool empty() const { return x_.empty(); }

  private:
    std::vector<double> x_, y_, m_;  // m_: second derivatives
};

/// A scalar function of one variable (initial profile u(x) or one of the
/// boundary functions of t), value-semantic and cheap to copy.
class Profile {
  public:
    Profile() : fn_([](double) { return 0.0; }) {}
    explicit Profile(std::function<double(double)> fn) : fn_(std::move(fn)) {}
    double operator()(double x) const { return fn_(x); }

    /// Smallest x beyond which |f| stays below eps on a scan grid.
    double decay_point(double eps, double x_hint) const;

  private:
    std::function<double(double)> fn_;
};

/// Declarative function specification: a named preset with parameters, or a
/// table of (abscissa, value) samples interpolated by a cubic spline.
struct FunctionSpec {
    std::string preset;  // "zero" | "gaussian_bump" | "soliton_trace" | "" (table)
    std::map<std::string, double> params;
    std::string component;  // for soliton_trace: "u" | "v" | "v1" | "v2"
    std::vector<std::pair<double, double>> table;

    bool is_table() const { return preset.empty(); }
    Profile make() const;
    void validate() const;
};

/// Exact one-soliton solution of the focusing equation (lambda = -1):
///   q(x,t) = sign * 2 kappa sech(2 kappa (x - 4 kappa^2 t - x0)).
struct Soliton {
    double kappa = 0.5;
    double x0 = 0.0;
    double sign = 1.0;

    double q(double x, double t) const;
    double qx(double x, double t) const;
    double qxx(double x, double t) const;
    double qt(double x, double t) const;

    Profile initial() const;          // x -> q(x, 0)
    Profile boundary_v() const;       // t -> q(0, t)
    Profile boundary_v1() const;      // t -> q_x(0, t)
    Profile boundary_v2() const;      // t -> q_xx(0, t)
};

}  // namespace halfline

#pragma once

#include <functional>
#include <vector>

#include "halfline/types.hpp"

namespace halfline {

struct ZeroFindOptions {
    double tol_root = 1e-12;
    int max_depth = 18;        // cell subdivision depth
    double min_boundary = 1e-9;  // |f| below this on a cell boundary -> BoundaryZero
};

/// Winding number of f along a closed polyline/curve chain given as
/// parametrized pieces; samples adaptively until the argument increment per
/// sample is small. Throws BoundaryZero when |f| dips below opts.min_boundary.
struct Curve {
    std::function<cplx(double)> gamma;  // parameter in [0, 1]
};

int winding_number(const std::function<cplx(cplx)>& f, const std::vector<Curve>& loop,
                   double min_boundary);

/// Zeros of an analytic function inside an axis-aligned rectangle, by
/// recursive winding-number subdivision plus Newton polish (derivative by
/// centered complex differencing). Only simple zeros are supported; a
/// persistent multiple count at the finest subdivision raises
/// MultipleZeroSuspected.
std::vector<cplx> find_zeros_rect(const std::function<cplx(cplx)>& f, cplx lo, cplx hi,
                                  const ZeroFindOptions& opts = {});

/// Same on an annular sector r in [r0, r1], arg in [a0, a1].
std::vector<cplx> find_zeros_sector(const std::function<cplx(cplx)>& f, double a0, double a1,
                                    double r0, double r1, const ZeroFindOptions& opts = {});

/// Newton refinement with centered-difference derivative; returns the
/// polished zero or throws MultipleZeroSuspected on basin failure.
cplx newton_polish(const std::function<cplx(cplx)>& f, cplx z0, double tol_root);

/// Derivative by Cauchy-integral differentiation on a circle (trapezoid,
/// spectrally accurate): f'(z0) = (1/2 pi i) oint f(k)/(k-z0)^2 dk.
cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx z0, double radius, int nodes = 64);

/// Residue of f at a simple pole z0 by the same circle quadrature.
cplx cauchy_residue(const std::function<cplx(cplx)>& f, cplx z0, double radius, int nodes = 64);

}  // namespace halfline

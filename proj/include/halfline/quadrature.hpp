#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "halfline/types.hpp"

namespace halfline {

/// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

/// Chebyshev-Lobatto nodes tau_j = -cos(j pi / deg), j = 0..deg (ascending).
std::vector<double> chebyshev_lobatto(int deg);

/// Interpolating polynomial through Lobatto samples, returned as monomial
/// coefficients in tau (c[0] + c[1] tau + ...). deg <= 24.
std::vector<cplx> chebyshev_to_monomial(const std::vector<cplx>& samples);

/// Evaluate a monomial-coefficient polynomial.
inline cplx poly_eval(const std::vector<cplx>& c, cplx tau) {
    cplx acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * tau + c[i];
    return acc;
}

/// One node of the boundary quadrature on the two rays of the upper sector:
/// weight already carries the complex ray direction and orientation.
struct ContourNode {
    cplx node;
    cplx weight;
};

/// Discretization of the oriented boundary of the upper sector Omega2:
/// incoming along arg k = 2pi/3 (from s_max to 0), outgoing along
/// arg k = pi/3 (0 to s_max). n = nodes per ray, even, >= 4. Composite
/// Gauss-Legendre panels; node radii are identical on both rays so the set
/// is closed under k -> -conj(k).
std::vector<ContourNode> omega2_boundary_quadrature(double s_max, int n);

/// Adaptive Simpson on a real interval for complex integrands; used as an
/// independent reference in tests and for small helper integrals.
cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, double tol,
                      int max_depth = 40);

}  // namespace halfline

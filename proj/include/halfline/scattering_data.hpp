#pragma once

#include <string>
#include <vector>

#include "halfline/oscillatory.hpp"
#include "halfline/types.hpp"

namespace halfline {

/// The full scattering data set: eigenvalues with norming coefficients,
/// reflection samples on the real axis, and the boundary spectral function
/// sampled on the two rays of the upper sector, plus the power-law tail
/// models used by the kernel quadrature beyond the sampled ranges.
struct ScatteringData {
    int lambda = -1;
    double T = 0.0;
    bool infinite_T = false;
    double t_eff = 0.0;
    double x_max = 0.0;

    std::vector<cplx> eigenvalues_x;  // zeros of s2+ in C+
    std::vector<cplx> norming_x;      // m_j = [i s1+(k_j) s2+'(k_j)]^-1
    std::vector<cplx> eigenvalues_bc; // zeros of r1- in Omega2
    std::vector<cplx> norming_bc;     // m_j^2 = -i res c

    std::vector<double> r_grid;       // export grid (symmetric)
    std::vector<cplx> r_values;

    // Quadrature-ready panel representations.
    osc::LineQuad r_pos;   // reflection on [0, k_max], dir +1, orient +1
    osc::LineQuad r_neg;   // reflection on [-k_max, 0] via dir -1, orient -1
    osc::LineQuad c_out;   // c on the outgoing ray arg = pi/3, orient +1
    osc::LineQuad c_in;    // c on the incoming ray arg = 2pi/3, orient -1
    osc::PowerTail r_tail; // |k| > k_max
    osc::PowerTail c_tail; // rays beyond ray_smax

    // measured defects, recorded at assembly time
    double defect_r_symmetry = 0.0;
    double defect_c_symmetry = 0.0;
    double defect_pairing = 0.0;

    /// Reflection coefficient interpolated from the panel representation.
    cplx r_at(double k) const;
    /// c on a boundary ray; outgoing = the arg pi/3 ray.
    cplx c_at_ray(double sigma, bool outgoing) const;

    bool has_discrete() const { return !eigenvalues_x.empty() || !eigenvalues_bc.empty(); }
    bool has_continuous() const { return !r_pos.empty() || !c_out.empty(); }

    std::string to_json_text() const;
    static ScatteringData from_json_text(const std::string& text);
    static ScatteringData from_json_file(const std::string& path);
};

}  // namespace halfline

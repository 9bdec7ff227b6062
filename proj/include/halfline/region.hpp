#pragma once

#include "halfline/types.hpp"

namespace halfline {

/// The six open sectors cut out by the contour Sigma = { Im k^3 = 0 },
/// plus the five Sigma components and the origin.
/// Omega1 = (0, pi/3), Omega2 = (pi/3, 2pi/3), ..., Omega6 = (5pi/3, 2pi).
enum class Region {
    Omega1,
    Omega2,
    Omega3,
    Omega4,
    Omega5,
    Omega6,
    SigmaRealAxis,
    SigmaRayPi3,
    SigmaRay2Pi3,
    SigmaRay4Pi3,
    SigmaRay5Pi3,
    Origin,
};

const char* region_name(Region r);

/// Total classification of a finite point. A point counts as on Sigma when
/// |Im k^3| <= 1e-12 * max(1, |k|^3); the ray is then identified by arg k.
Region classify_region(cplx k);

inline bool in_upper_half(cplx k) { return k.imag() > 0.0; }

/// Strict interior of Omega2: pi/3 < arg k < 2pi/3.
bool in_omega2(cplx k);

/// Strict interior of Omega1 u Omega3.
bool in_omega13(cplx k);

}  // namespace halfline

#include "halfline/region.hpp"

#include <algorithm>
#include <array>

namespace halfline {

const char* region_name(Region r) {
    switch (r) {
        case Region::Omega1: return "Omega1";
        case Region::Omega2: return "Omega2";
        case Region::Omega3: return "Omega3";
        case Region::Omega4: return "Omega4";
        case Region::Omega5: return "Omega5";
        case Region::Omega6: return "Omega6";
        case Region::SigmaRealAxis: return "SigmaRealAxis";
        case Region::SigmaRayPi3: return "SigmaRayPi3";
        case Region::SigmaRay2Pi3: return "SigmaRay2Pi3";
        case Region::SigmaRay4Pi3: return "SigmaRay4Pi3";
        case Region::SigmaRay5Pi3: return "SigmaRay5Pi3";
        case Region::Origin: return "Origin";
    }
    return "?";
}

Region classify_region(cplx k) {
    const double r = std::abs(k);
    if (r <= 1e-14) return Region::Origin;

    const cplx k3 = k * k * k;
    const double tol = 1e-12 * std::max(1.0, r * r * r);
    if (std::abs(k3.imag()) <= tol) {
        // On Sigma; pick the nearest of the six ray directions.
        double a = std::arg(k);  // (-pi, pi]
        if (a < 0) a += 2.0 * pi;
        static const std::array<double, 7> dirs = {0.0,          pi / 3.0, 2.0 * pi / 3.0, pi,
                                                   4.0 * pi / 3.0, 5.0 * pi / 3.0, 2.0 * pi};
        int best = 0;
        double bd = 1e300;
        for (int i = 0; i < 7; ++i) {
            const double d = std::abs(a - dirs[i]);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        switch (best) {
            case 0:
            case 3:
            case 6: return Region::SigmaRealAxis;
            case 1: return Region::SigmaRayPi3;
            case 2: return Region::SigmaRay2Pi3;
            case 4: return Region::SigmaRay4Pi3;
            case 5: return Region::SigmaRay5Pi3;
        }
    }

    double a = std::arg(k);
    if (a < 0) a += 2.0 * pi;
    const double third = pi / 3.0;
    const int sector = std::min(5, static_cast<int>(a / third));
    switch (sector) {
        case 0: return Region::Omega1;
        case 1: return Region::Omega2;
        case 2: return Region::Omega3;
        case 3: return Region::Omega4;
        case 4: return Region::Omega5;
        default: return Region::Omega6;
    }
}

bool in_omega2(cplx k) { return classify_region(k) == Region::Omega2; }

bool in_omega13(cplx k) {
    const Region r = classify_region(k);
    return r == Region::Omega1 || r == Region::Omega3;
}

}  // namespace halfline

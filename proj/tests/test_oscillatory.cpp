#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "halfline/oscillatory.hpp"
#include "oracles.hpp"

using namespace halfline;
using namespace halfline::osc;

namespace {

std::vector<double> real_edges() {
    return {0.0, 0.25, 0.5, 1.0, 1.6, 2.4, 3.4, 5.0, 7.0, 10.0, 14.0, 20.0};
}

// Smooth decaying amplitude with an O(1/k) tail: a/(k - i b) type behaviour
// mimicking a reflection coefficient.
cplx sample_amplitude(cplx k) { return cplx(0.0, 0.05) / (k - cplx(0.0, 0.8)) + 0.02 / (k * k + 4.0); }

}  // namespace

TEST_CASE("line integral matches brute reference in the mild-phase regime") {
    const auto lq = LineQuad::build(1.0, 1.0, real_edges(), 12, sample_amplitude);
    for (double s : {0.0, 0.3, 1.7}) {
        for (double t : {0.0, 0.01}) {
            const cplx got = line_integral(lq, s, t, 0);
            const cplx ref = oracles::ref_line_osc(sample_amplitude, 1.0, 0.0, 20.0, s, t);
            CHECK(std::abs(got - ref) < 1e-8);
        }
    }
}

TEST_CASE("line integral matches brute reference in the descent-path regime") {
    const auto lq = LineQuad::build(1.0, 1.0, real_edges(), 12, sample_amplitude);
    struct Pt {
        double s, t;
    };
    for (const Pt p : {Pt{6.0, 0.0}, Pt{1.0, 0.02}, Pt{0.4, 0.05}, Pt{2.5, 0.08}}) {
        const cplx got = line_integral(lq, p.s, p.t, 0);
        const cplx ref = oracles::ref_line_osc(sample_amplitude, 1.0, 0.0, 20.0, p.s, p.t, 1e-13);
        CHECK(std::abs(got - ref) < 5e-9);
    }
}

TEST_CASE("line integral derivative factor (ik) matches the reference") {
    const auto lq = LineQuad::build(1.0, 1.0, real_edges(), 12, sample_amplitude);
    auto amp_ik = [](cplx k) { return sample_amplitude(k) * iu() * k; };
    for (double s : {0.5, 4.0}) {
        for (double t : {0.0, 0.03}) {
            const cplx got = line_integral(lq, s, t, 1);
            const cplx ref = oracles::ref_line_osc(amp_ik, 1.0, 0.0, 20.0, s, t, 1e-13);
            CHECK(std::abs(got - ref) < 5e-9);
        }
    }
}

TEST_CASE("line integral on a boundary ray matches the reference") {
    const cplx dir = std::polar(1.0, pi / 3.0);
    std::vector<double> edges{0.0, 0.3, 0.7, 1.2, 2.0, 3.2, 5.0, 8.0, 12.0};
    auto amp = [](cplx k) { return cplx(0.0, 0.04) / (k - cplx(0.0, 0.5)); };
    const auto lq = LineQuad::build(dir, 1.0, edges, 12, amp);
    struct Pt {
        double s, t;
    };
    for (const Pt p : {Pt{0.0, 0.0}, Pt{1.3, 0.0}, Pt{0.2, 0.4}, Pt{0.0, 2.0}, Pt{3.0, 1.0}}) {
        const cplx got = line_integral(lq, p.s, p.t, 0);
        const cplx ref = oracles::ref_line_osc(amp, dir, 0.0, 12.0, p.s, p.t, 1e-13);
        CHECK(std::abs(got - ref) < 5e-9);
    }
}

TEST_CASE("line integral handles violent cubic phase via descent paths") {
    // t large enough that direct resolution would need ~1e5 nodes.
    const auto lq = LineQuad::build(1.0, 1.0, real_edges(), 12, sample_amplitude);
    const double s = 1.0, t = 0.6;
    const cplx got = line_integral(lq, s, t, 0);
    const cplx ref = oracles::ref_line_osc(sample_amplitude, 1.0, 0.0, 20.0, s, t, 1e-13);
    CHECK(std::abs(got - ref) < 1e-8);
}

TEST_CASE("power tail fit recovers exact inverse-power coefficients") {
    PowerTail exact;
    exact.sigma0 = 10.0;
    exact.coeff = {cplx(0.0, 0.05), cplx(0.02, 0.0), cplx(0.0, -0.01)};
    std::vector<cplx> ks, fs;
    for (double k = 5.0; k <= 10.0; k += 0.25) {
        ks.push_back(k);
        fs.push_back(exact.value(k));
        ks.push_back(-k);
        fs.push_back(exact.value(-k));
    }
    const PowerTail fit = fit_power_tail(ks, fs, 10.0, 5);
    for (int m = 0; m < 3; ++m) CHECK(std::abs(fit.coeff[m] - exact.coeff[m]) < 1e-12);
    for (int m = 3; m < 5; ++m) CHECK(std::abs(fit.coeff[m]) < 1e-10);
}

TEST_CASE("real tail pair matches brute quadrature over a long window") {
    PowerTail tail;
    tail.sigma0 = 10.0;
    tail.coeff = {cplx(0.0, 0.05), cplx(0.02, 0.0), cplx(0.0, -0.01)};
    auto amp = [&](cplx k) { return tail.value(k); };

    struct Pt {
        double s, t;
    };
    for (const Pt p : {Pt{2.0, 0.0}, Pt{0.5, 0.1}, Pt{0.05, 1.0}, Pt{4.0, 0.5}}) {
        const cplx got = real_tail_pair(tail, p.s, p.t, 0);
        // brute: integrate far enough that the truncated remainder is tiny
        const double far = (p.t > 0.0) ? 120.0 : 60000.0 / std::max(p.s, 0.5);
        const cplx right = oracles::ref_line_osc(amp, 1.0, 10.0, far, p.s, p.t, 1e-13);
        const cplx left = oracles::ref_line_osc(amp, -1.0, 10.0, far, p.s, p.t, 1e-13);
        // left line: integral over [-far, -10] equals +orient(-1) convention
        const cplx ref = right - left;
        CHECK(std::abs(got - ref) < 2e-7);
    }
}

TEST_CASE("ray tail pair matches brute quadrature") {
    PowerTail tail;
    tail.sigma0 = 8.0;
    tail.coeff = {cplx(0.0, 0.03), cplx(-0.01, 0.0)};
    auto amp = [&](cplx k) { return tail.value(k); };
    const cplx d_out = std::polar(1.0, pi / 3.0), d_in = std::polar(1.0, 2.0 * pi / 3.0);

    struct Pt {
        double s, t;
    };
    for (const Pt p : {Pt{1.0, 0.0}, Pt{0.3, 0.2}, Pt{0.0, 0.7}}) {
        const cplx got = ray_tail_pair(tail, p.s, p.t, 0);
        const double far = (p.t > 0.0) ? 50.0 : ((p.s > 0.5) ? 300.0 : 900.0);
        const cplx out_ref = oracles::ref_line_osc(amp, d_out, 8.0, far, p.s, p.t, 1e-13);
        const cplx in_ref = oracles::ref_line_osc(amp, d_in, 8.0, far, p.s, p.t, 1e-13);
        CHECK(std::abs(got - (out_ref - in_ref)) < 3e-8);
    }
}

TEST_CASE("static tail pairs: the s = t = 0 limits agree with small-s values") {
    PowerTail tail;
    tail.sigma0 = 10.0;
    tail.coeff = {cplx(0.0, 0.05), cplx(0.02, 0.0), cplx(0.0, -0.01), cplx(0.004, 0.0)};
    for (int p : {0, 1}) {
        const cplx limit = real_tail_pair(tail, 0.0, 0.0, p);
        const cplx near = real_tail_pair(tail, 1e-7, 0.0, p);
        CHECK(std::abs(limit - near) < 1e-4);
        const cplx rlimit = ray_tail_pair(tail, 0.0, 0.0, p);
        const cplx rnear = ray_tail_pair(tail, 1e-7, 0.0, p);
        CHECK(std::abs(rlimit - rnear) < 1e-4);
    }
}

TEST_CASE("closed contour of an analytic tail model collapses to the residue sum") {
    // c(k) = a/(k - i kappa) restricted to the sector boundary: the oriented
    // boundary integral of c e^{iks} must equal 2 pi i times the residue.
    const double kappa = 0.5;
    const cplx a(0.0, -0.05);  // purely imaginary: matches the reflection structure
    auto amp = [&](cplx k) { return a / (k - iu() * kappa); };
    std::vector<double> edges{0.0, 0.3, 0.7, 1.2, 2.0, 3.2, 5.0, 8.0, 12.0};
    const auto out = LineQuad::build(std::polar(1.0, pi / 3.0), 1.0, edges, 14, amp);
    const auto in = LineQuad::build(std::polar(1.0, 2.0 * pi / 3.0), -1.0, edges, 14, amp);
    std::vector<cplx> ks, fs;
    for (double sig = 6.0; sig <= 12.0; sig += 0.5) {
        ks.push_back(sig * std::polar(1.0, pi / 3.0));
        fs.push_back(amp(ks.back()));
        ks.push_back(sig * std::polar(1.0, 2.0 * pi / 3.0));
        fs.push_back(amp(ks.back()));
    }
    const PowerTail tail = fit_power_tail(ks, fs, 12.0, 6);

    for (double s : {0.4, 1.0, 2.5}) {
        cplx total = line_integral(out, s, 0.0, 0) + line_integral(in, s, 0.0, 0) +
                     ray_tail_pair(tail, s, 0.0, 0);
        const cplx residue = 2.0 * pi * iu() * a * std::exp(iu() * (iu() * kappa) * s);
        CHECK(std::abs(total - residue) < 2e-7);
    }
}

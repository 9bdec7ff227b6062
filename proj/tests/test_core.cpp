#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "halfline/config.hpp"
#include "halfline/profile.hpp"
#include "halfline/quadrature.hpp"
#include "halfline/region.hpp"
#include "halfline/types.hpp"
#include "oracles.hpp"

using namespace halfline;

TEST_CASE("region classification of sample points") {
    CHECK(classify_region(cplx(2.0, 0.1)) == Region::Omega1);
    CHECK(classify_region(cplx(0.0, 1.0)) == Region::Omega2);
    CHECK(classify_region(cplx(-3.0, 0.0)) == Region::SigmaRealAxis);
    CHECK(classify_region(cplx(-1.0, 1.0)) == Region::Omega3);
    CHECK(classify_region(cplx(-1.0, -1.2)) == Region::Omega4);
    CHECK(classify_region(cplx(0.1, -2.0)) == Region::Omega5);
    CHECK(classify_region(cplx(1.5, -0.4)) == Region::Omega6);
    CHECK(classify_region(cplx(0.0, 0.0)) == Region::Origin);
    CHECK(classify_region(std::polar(2.0, pi / 3.0)) == Region::SigmaRayPi3);
    CHECK(classify_region(std::polar(0.7, 2.0 * pi / 3.0)) == Region::SigmaRay2Pi3);
    CHECK(classify_region(std::polar(1.2, 4.0 * pi / 3.0)) == Region::SigmaRay4Pi3);
    CHECK(classify_region(std::polar(3.3, 5.0 * pi / 3.0)) == Region::SigmaRay5Pi3);
}

TEST_CASE("region mirrors under conjugation and sign flip") {
    auto mirror_conj = [](Region r) {
        switch (r) {
            case Region::Omega1: return Region::Omega6;
            case Region::Omega2: return Region::Omega5;
            case Region::Omega3: return Region::Omega4;
            case Region::Omega4: return Region::Omega3;
            case Region::Omega5: return Region::Omega2;
            case Region::Omega6: return Region::Omega1;
            default: return r;
        }
    };
    auto mirror_neg_conj = [](Region r) {
        switch (r) {
            case Region::Omega1: return Region::Omega3;
            case Region::Omega3: return Region::Omega1;
            case Region::Omega4: return Region::Omega6;
            case Region::Omega6: return Region::Omega4;
            default: return r;
        }
    };
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int i = 0; i < 400; ++i) {
        const cplx k(U(rng), U(rng));
        const Region r = classify_region(k);
        if (r == Region::SigmaRealAxis || r == Region::Origin) continue;
        if (r == Region::SigmaRayPi3 || r == Region::SigmaRay2Pi3 ||
            r == Region::SigmaRay4Pi3 || r == Region::SigmaRay5Pi3)
            continue;
        CHECK(classify_region(std::conj(k)) == mirror_conj(r));
        CHECK(classify_region(-std::conj(k)) == mirror_neg_conj(r));
    }
}

TEST_CASE("omega2 boundary quadrature basics") {
    CHECK_THROWS_AS(omega2_boundary_quadrature(1.0, 5), ConfigError);
    CHECK_THROWS_AS(omega2_boundary_quadrature(1.0, 2), ConfigError);

    const auto nodes = omega2_boundary_quadrature(1.0, 4);
    // multiset closed under k -> -conj(k)
    for (const auto& n : nodes) {
        bool found = false;
        for (const auto& m : nodes)
            if (std::abs(-std::conj(n.node) - m.node) < 1e-12) found = true;
        CHECK(found);
    }
    // nodes sit on Sigma
    for (const auto& n : nodes) {
        const Region r = classify_region(n.node);
        CHECK((r == Region::SigmaRayPi3 || r == Region::SigmaRay2Pi3));
    }
}

TEST_CASE("omega2 boundary quadrature integrates constants exactly") {
    const double smax = 1.0;
    const auto nodes = omega2_boundary_quadrature(smax, 4);
    cplx total = 0.0;
    for (const auto& n : nodes) total += n.weight;
    const cplx expect = (std::polar(1.0, pi / 3.0) - std::polar(1.0, 2.0 * pi / 3.0)) * smax;
    CHECK(std::abs(total - expect) < 1e-13);
}

TEST_CASE("omega2 boundary quadrature matches adaptive reference for e^{ik}") {
    const double smax = 40.0;
    const auto nodes = omega2_boundary_quadrature(smax, 360);
    cplx total = 0.0;
    for (const auto& n : nodes) total += n.weight * std::exp(iu() * n.node);

    const cplx d_out = std::polar(1.0, pi / 3.0), d_in = std::polar(1.0, 2.0 * pi / 3.0);
    auto f_out = [&](double s) { return std::exp(iu() * (s * d_out)) * d_out; };
    auto f_in = [&](double s) { return std::exp(iu() * (s * d_in)) * d_in; };
    const cplx expect =
        oracles::ref_integral(f_out, 0.0, smax) - oracles::ref_integral(f_in, 0.0, smax);
    CHECK(std::abs(total - expect) < 1e-10);
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
    const auto& [x, w] = gauss_legendre(12);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], 22);
    CHECK(acc == doctest::Approx(2.0 / 23.0).epsilon(1e-13));
}

TEST_CASE("chebyshev panel interpolation converges spectrally") {
    auto f = [](double t) { return std::exp(cplx(0.0, 2.0) * t) / (2.0 + t); };
    auto max_err = [&](int deg) {
        const auto tau = chebyshev_lobatto(deg);
        std::vector<cplx> samples(tau.size());
        for (std::size_t j = 0; j < tau.size(); ++j) samples[j] = f(tau[j]);
        const auto mono = chebyshev_to_monomial(samples);
        double e = 0.0;
        for (double t : {-0.9, -0.3, 0.12, 0.77})
            e = std::max(e, std::abs(poly_eval(mono, t) - f(t)));
        return e;
    };
    // pole at tau = -2: Bernstein parameter 2 + sqrt(3)
    CHECK(max_err(12) < 5e-7);
    CHECK(max_err(20) < 2e-11);
    CHECK(max_err(20) < 1e-4 * max_err(12));
}

TEST_CASE("cubic spline interpolates and extends by zero") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 40; ++i) {
        xs.push_back(0.1 * i);
        ys.push_back(std::sin(0.1 * i));
    }
    CubicSpline sp(xs, ys);
    CHECK(sp(1.23) == doctest::Approx(std::sin(1.23)).epsilon(1e-6));
    CHECK(sp(17.0) == 0.0);
    CHECK(sp(-2.0) == 0.0);
}

TEST_CASE("function specs validate and evaluate") {
    FunctionSpec bad{"gaussian_bump", {{"amplitude", 1.0}}, "", {}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    FunctionSpec tab{"", {}, "", {{0.0, 1.0}, {1.0, 2.0}, {0.5, 3.0}}};
    CHECK_THROWS_AS(tab.validate(), ConfigError);

    FunctionSpec g{"gaussian_bump", {{"amplitude", 0.3}, {"center", 4.0}, {"width", 1.0}}, "", {}};
    const Profile p = g.make();
    CHECK(p(4.0) == doctest::Approx(0.3));

    FunctionSpec st{"soliton_trace", {{"kappa", 0.5}, {"x0", -3.0}}, "v1", {}};
    const Profile v1 = st.make();
    Soliton s{0.5, -3.0, 1.0};
    CHECK(v1(0.7) == doctest::Approx(s.qx(0.0, 0.7)));
}

TEST_CASE("config JSON round trip") {
    ProblemConfig cfg = ProblemConfig::soliton_case(0.5, -3.0, 4.0);
    cfg.k_count = 41;
    const std::string text = cfg.to_json_text();
    const ProblemConfig back = ProblemConfig::from_json_text(text);
    CHECK(back.lambda == cfg.lambda);
    CHECK(back.T == doctest::Approx(cfg.T));
    CHECK(back.k_count == cfg.k_count);
    CHECK(back.u_spec.preset == "soliton_trace");
    CHECK(back.to_json_text() == text);
}

TEST_CASE("config validation rejects bad input") {
    ProblemConfig cfg = ProblemConfig::zero_case(-1, 4.0);
    cfg.lambda = 2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ProblemConfig::zero_case(-1, 4.0);
    cfg.nystrom.order = 4;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ProblemConfig::zero_case(-1, 4.0);
    cfg.tol.quad = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("mat2c algebra") {
    const Mat2c a{cplx(1, 1), cplx(0, 2), cplx(3, 0), cplx(1, -1)};
    const Mat2c inv = a.inverse();
    const Mat2c id = a * inv;
    CHECK(std::abs(id.a11 - 1.0) < 1e-14);
    CHECK(std::abs(id.a12) < 1e-14);
    CHECK(std::abs(id.a21) < 1e-14);
    CHECK(std::abs(id.a22 - 1.0) < 1e-14);
    CHECK(std::abs(Mat2c::exp_msigma3(cplx(0.3, 0.2)).a11 - std::exp(cplx(-0.3, -0.2))) < 1e-15);
}

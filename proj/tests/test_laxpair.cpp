#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "halfline/laxpair.hpp"
#include "halfline/profile.hpp"

using namespace halfline;
using namespace halfline::lax;

namespace {

Profile zero_profile() { return Profile(); }

CoeffTriplet zero_triplet() { return {Profile(), Profile(), Profile()}; }

double mat_dist(const Mat2c& a, const Mat2c& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("coefficient matrices match their definitions") {
    CHECK(mat_dist(q_matrix(0.0, -1), Mat2c::zero()) == 0.0);
    const Mat2c qp = q_matrix(2.0, 1);
    CHECK(qp.a12 == cplx(2.0));
    CHECK(qp.a21 == cplx(2.0));
    const Mat2c qm = q_matrix(1.0, -1);
    CHECK(qm.a12 == cplx(1.0));
    CHECK(qm.a21 == cplx(-1.0));

    // U with q = 0 is -ik sigma3
    const Mat2c u0 = u_matrix(0.0, -1, cplx(1.0));
    CHECK(std::abs(u0.a11 - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(u0.a22 - cplx(0.0, 1.0)) < 1e-15);
    // k = 0 kills the sigma3 part
    const Mat2c uk0 = u_matrix(1.0, -1, cplx(0.0));
    CHECK(std::abs(uk0.a12 - 1.0) < 1e-15);
    CHECK(std::abs(uk0.a21 + 1.0) < 1e-15);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const cplx k(U(rng), U(rng));
        const int lam = (i % 2) ? 1 : -1;
        CHECK(std::abs(u_matrix(U(rng), lam, k).trace()) < 1e-13);
        CHECK(std::abs(v_matrix(U(rng), U(rng), U(rng), lam, k).trace()) < 1e-12);
    }
}

TEST_CASE("v matrix free case and boundary entry") {
    const cplx k(0.7, 0.3);
    const Mat2c v0 = v_matrix(0.0, 0.0, 0.0, -1, k);
    const cplx ik3 = iu() * k * k * k;
    CHECK(std::abs(v0.a11 + 4.0 * ik3) < 1e-14);
    CHECK(std::abs(v0.a22 - 4.0 * ik3) < 1e-14);
    CHECK(std::abs(v0.a12) < 1e-15);

    // (1,2) entry with data (v, v1, v2) equals 2 lambda v^3 + 4k^2 v + 2ik v1 - v2
    for (int lam : {-1, 1}) {
        const double v = 0.4, v1 = -0.2, v2 = 0.13;
        const Mat2c V = v_matrix(v, v1, v2, lam, k);
        const cplx expect =
            2.0 * double(lam) * v * v * v + 4.0 * k * k * v + 2.0 * iu() * k * v1 - v2;
        CHECK(std::abs(V.a12 - expect) < 1e-14);
    }
}

TEST_CASE("integrate_x free evolution and det preservation") {
    const cplx k(0.8, 0.0);
    const Mat2c W = integrate_x(zero_profile(), -1, k, 0.0, 1.0, Mat2c::identity(), 1e-12);
    CHECK(mat_dist(W, Mat2c::exp_msigma3(iu() * k)) < 1e-10);

    Soliton s{0.5, 1.0, 1.0};
    const Profile q = s.initial();
    for (const cplx kk : {cplx(1.3, 0.0), cplx(0.4, 0.6), cplx(-2.0, 0.2)}) {
        const Mat2c Wk = integrate_x(q, -1, kk, 0.0, 6.0, Mat2c::identity(), 1e-10);
        CHECK(std::abs(Wk.det() - 1.0) < 1e-8);
    }
}

TEST_CASE("integrate_x self-convergence under tolerance tightening") {
    Soliton s{0.5, 1.0, 1.0};
    const Profile q = s.initial();
    const cplx k(1.7, 0.0);
    const Mat2c a = integrate_x(q, -1, k, 0.0, 8.0, Mat2c::identity(), 1e-8);
    const Mat2c c = integrate_x(q, -1, k, 0.0, 8.0, Mat2c::identity(), 1e-12);
    CHECK(mat_dist(a, c) < 3e-7);
}

TEST_CASE("integrate_t free evolution, det preservation, self-convergence") {
    const cplx k(0.9, 0.0);
    const Mat2c W = integrate_t(zero_triplet(), -1, k, 0.0, 1.0, Mat2c::identity(), 1e-12);
    CHECK(mat_dist(W, Mat2c::exp_msigma3(4.0 * iu() * k * k * k)) < 1e-10);

    Soliton s{0.5, -1.0, 1.0};
    const CoeffTriplet bt{s.boundary_v(), s.boundary_v1(), s.boundary_v2()};
    const Mat2c Wt = integrate_t(bt, -1, cplx(0.8, 0.1), 0.0, 2.0, Mat2c::identity(), 1e-10);
    CHECK(std::abs(Wt.det() - 1.0) < 1e-8);

    const Mat2c ta = integrate_t(bt, -1, cplx(1.1, 0.0), 0.0, 2.0, Mat2c::identity(), 1e-8);
    const Mat2c tc = integrate_t(bt, -1, cplx(1.1, 0.0), 0.0, 2.0, Mat2c::identity(), 1e-12);
    CHECK(mat_dist(ta, tc) < 1e-7);
}

TEST_CASE("jost solution: free case, unit determinant, large-k asymptotics") {
    const double xmax = 20.0;
    // free: psi = exp(-i k (x + 4k^2 t) sigma3)
    const cplx k(1.1, 0.0);
    const auto free_res = jost_psi_at(0.7, 0.3, zero_profile(), -1, k, xmax, 1e-12);
    const Mat2c expect = Mat2c::exp_msigma3(iu() * k * 0.7 + 4.0 * iu() * k * k * k * 0.3);
    CHECK(mat_dist(free_res.W, expect) < 1e-9);

    Soliton s{0.5, -3.0, 1.0};
    const Profile u = s.initial();
    for (double kk : {0.5, 1.7, -2.3}) {
        const auto r = jost_psi_at(1.0, 0.0, u, -1, cplx(kk, 0.0), xmax, 1e-11);
        CHECK(std::abs(r.W.det() - 1.0) < 1e-8);
        CHECK(r.minus_certified);
        CHECK(r.plus_certified);
    }

    // e^{-ikx - 4ik^3 t} Psi^+ -> (0,1)^T + O(1/k) for Im k >= 0
    const cplx kbig(20.0, 0.0);
    const auto rb = jost_psi_at(1.0, 0.2, u, -1, kbig, xmax, 1e-11);
    const cplx ph = std::exp(-iu() * (kbig * 1.0 + 4.0 * kbig * kbig * kbig * 0.2));
    CHECK(std::abs(ph * rb.W.a12) < 0.1);
    CHECK(std::abs(ph * rb.W.a22 - 1.0) < 0.1);
}

TEST_CASE("jost columns off the axis carry certification flags") {
    Soliton s{0.5, -3.0, 1.0};
    const Profile u = s.initial();
    const auto up = jost_psi_at(0.5, 0.0, u, -1, cplx(0.4, 0.8), 20.0, 1e-11);
    CHECK(up.plus_certified);
    CHECK(!up.minus_certified);
    const auto dn = jost_psi_at(0.5, 0.0, u, -1, cplx(0.4, -0.8), 20.0, 1e-11);
    CHECK(!dn.plus_certified);
    CHECK(dn.minus_certified);
}

TEST_CASE("phi: identity at origin, free case, entire det") {
    Soliton s{0.5, 2.0, 1.0};
    const Profile u = s.initial();
    CHECK(mat_dist(phi_at_t0(0.0, u, -1, cplx(0.3, 1.2), 1e-12), Mat2c::identity()) < 1e-12);

    const cplx k(0.8, 0.0);
    CHECK(mat_dist(phi_at_t0(1.4, zero_profile(), -1, k, 1e-12),
                   Mat2c::exp_msigma3(iu() * k * 1.4)) < 1e-10);

    for (const cplx kk : {cplx(0.6, 0.4), cplx(-1.0, -0.7), cplx(0.0, 1.5)}) {
        const Mat2c W = phi_at_t0(3.0, u, -1, kk, 1e-11);
        CHECK(std::abs(W.det() - 1.0) < 1e-8);
    }
}

TEST_CASE("hat_psi: free case, unit det on Sigma, Lambda symmetry") {
    const cplx k(1.2, 0.0);
    const auto free_res = hat_psi(0.4, zero_triplet(), -1, k, 4.0, 1e-12);
    CHECK(mat_dist(free_res.W, Mat2c::exp_msigma3(4.0 * iu() * k * k * k * 0.4)) < 1e-10);

    Soliton s{0.5, -3.0, 1.0};
    const CoeffTriplet bt{s.boundary_v(), s.boundary_v1(), s.boundary_v2()};
    const int lam = -1;
    for (const cplx kk :
         {cplx(0.9, 0.0), std::polar(1.4, pi / 3.0), std::polar(0.8, 2.0 * pi / 3.0)}) {
        const auto r = hat_psi(0.7, bt, lam, kk, 4.0, 1e-11);
        CHECK(std::abs(r.W.det() - 1.0) < 1e-8);
        CHECK(r.minus_certified);
        CHECK(r.plus_certified);

        // W(k) = Lambda conj(W(conj k)) Lambda^{-1} on Sigma
        const auto rc = hat_psi(0.7, bt, lam, std::conj(kk), 4.0, 1e-11);
        const Mat2c L = Mat2c::lambda_sym(lam);
        const Mat2c sym = L * rc.W.conj() * L.inverse();
        CHECK(mat_dist(r.W, sym) < 1e-7);
    }
}

TEST_CASE("hat_psi column certification off Sigma") {
    Soliton s{0.5, -3.0, 1.0};
    const CoeffTriplet bt{s.boundary_v(), s.boundary_v1(), s.boundary_v2()};
    const cplx k_omega2(0.1, 0.9);  // Im k^3 < 0
    const auto a = hat_psi(0.0, bt, -1, k_omega2, 4.0, 1e-11);
    CHECK(a.minus_certified);
    CHECK(!a.plus_certified);
    const cplx k_omega1(0.9, 0.25);  // Im k^3 > 0
    const auto b = hat_psi(0.0, bt, -1, k_omega1, 4.0, 1e-11);
    CHECK(!b.minus_certified);
    CHECK(b.plus_certified);
}

TEST_CASE("phi reality symmetry under k -> -conj k") {
    Soliton s{0.5, 2.0, 1.0};
    const Profile u = s.initial();
    for (const cplx kk : {cplx(0.6, 0.4), cplx(1.1, -0.2)}) {
        const Mat2c a = phi_at_t0(2.0, u, -1, kk, 1e-11);
        const Mat2c b = phi_at_t0(2.0, u, -1, -std::conj(kk), 1e-11);
        CHECK(mat_dist(a, b.conj()) < 1e-7);
    }
}

TEST_CASE("compatibility: x-then-t equals t-then-x on an exact solution") {
    // Lax-pair transport between (0,0) and (x1,t1) along the two edge orders
    // must agree when q solves the equation.
    Soliton s{0.6, 0.5, 1.0};
    const double x1 = 1.3, t1 = 0.8;
    const cplx k(0.7, 0.2);
    const int lam = -1;
    const double tol = 1e-11;

    auto xslice = [&](double t) { return Profile([s, t](double x) { return s.q(x, t); }); };
    auto tslice = [&](double x) {
        return CoeffTriplet{Profile([s, x](double t) { return s.q(x, t); }),
                            Profile([s, x](double t) { return s.qx(x, t); }),
                            Profile([s, x](double t) { return s.qxx(x, t); })};
    };

    Mat2c A = integrate_x(xslice(0.0), lam, k, 0.0, x1, Mat2c::identity(), tol);
    A = integrate_t(tslice(x1), lam, k, 0.0, t1, A, tol);
    Mat2c B = integrate_t(tslice(0.0), lam, k, 0.0, t1, Mat2c::identity(), tol);
    B = integrate_x(xslice(t1), lam, k, 0.0, x1, B, tol);

    CHECK(mat_dist(A, B) < 1e-6);
}

TEST_CASE("hat_phi equals the unpeeled t-propagator on Sigma") {
    Soliton s{0.5, -2.0, 1.0};
    const CoeffTriplet bt{s.boundary_v(), s.boundary_v1(), s.boundary_v2()};
    const cplx k(1.3, 0.0);
    const Mat2c a = hat_phi(1.1, bt, -1, k, 1e-11);
    const Mat2c b = integrate_t(bt, -1, k, 0.0, 1.1, Mat2c::identity(), 1e-11);
    CHECK(mat_dist(a, b) < 1e-8);
}

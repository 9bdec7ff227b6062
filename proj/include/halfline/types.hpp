#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace halfline {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline cplx iu() { return cplx(0.0, 1.0); }

/// 2x2 complex matrix, the carrier for Lax-pair solutions and
/// scattering/transition matrices.
struct Mat2c {
    cplx a11{}, a12{}, a21{}, a22{};

    static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2c zero() { return {}; }
    static Mat2c sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
    /// diag(e^{-z}, e^{z}), i.e. exp(-z*sigma3).
    static Mat2c exp_msigma3(cplx z) { return {std::exp(-z), 0.0, 0.0, std::exp(z)}; }
    /// Lambda = [[0,1],[lambda,0]] from the conjugation symmetries.
    static Mat2c lambda_sym(int lambda) { return {0.0, 1.0, cplx(lambda), 0.0}; }

    cplx det() const { return a11 * a22 - a12 * a21; }
    cplx trace() const { return a11 + a22; }

    Mat2c inverse() const {
        const cplx d = det();
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }

    Mat2c conj() const { return {std::conj(a11), std::conj(a12), std::conj(a21), std::conj(a22)}; }

    double norm() const {
        return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
    }

    friend Mat2c operator+(const Mat2c& a, const Mat2c& b) {
        return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
    }
    friend Mat2c operator-(const Mat2c& a, const Mat2c& b) {
        return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
    }
    friend Mat2c operator*(const Mat2c& a, const Mat2c& b) {
        return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
                a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
    }
    friend Mat2c operator*(cplx s, const Mat2c& a) {
        return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
    }

    /// First (minus) / second (plus) column as a pair.
    std::pair<cplx, cplx> col_minus() const { return {a11, a21}; }
    std::pair<cplx, cplx> col_plus() const { return {a12, a22}; }
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline bool is_finite(const Mat2c& m) {
    return is_finite(m.a11) && is_finite(m.a12) && is_finite(m.a21) && is_finite(m.a22);
}

// ---------------------------------------------------------------------------
// Error taxonomy. Every failure mode surfaced by the numerics has a named
// type so callers (CLI, tests) can map them to exit codes and assertions.
// ---------------------------------------------------------------------------

struct NumericsError : std::runtime_error {
    explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Adaptive ODE controller underflowed the step size.
struct StepFailure : NumericsError {
    explicit StepFailure(const std::string& msg) : NumericsError(msg) {}
};

/// |det Psi(0,0,k)| too small to invert.
struct SingularPsi : NumericsError {
    explicit SingularPsi(const std::string& msg) : NumericsError(msg) {}
};

/// s2+(k) vanishes on the real axis: data outside the admissible class.
struct RealZeroOfS2 : NumericsError {
    explicit RealZeroOfS2(const std::string& msg) : NumericsError(msg) {}
};

struct BoundaryZero : NumericsError {
    explicit BoundaryZero(const std::string& msg) : NumericsError(msg) {}
};

struct MultipleZeroSuspected : NumericsError {
    explicit MultipleZeroSuspected(const std::string& msg) : NumericsError(msg) {}
};

struct VanishingS1AtZero : NumericsError {
    explicit VanishingS1AtZero(const std::string& msg) : NumericsError(msg) {}
};

struct InconsistentResidue : NumericsError {
    explicit InconsistentResidue(const std::string& msg) : NumericsError(msg) {}
};

struct NearPole : NumericsError {
    explicit NearPole(const std::string& msg) : NumericsError(msg) {}
};

struct QuadratureNotConverged : NumericsError {
    explicit QuadratureNotConverged(const std::string& msg) : NumericsError(msg) {}
};

struct SingularSystem : NumericsError {
    explicit SingularSystem(const std::string& msg) : NumericsError(msg) {}
};

struct GridTooCoarse : NumericsError {
    explicit GridTooCoarse(const std::string& msg) : NumericsError(msg) {}
};

struct GridNotSymmetric : NumericsError {
    explicit GridNotSymmetric(const std::string& msg) : NumericsError(msg) {}
};

struct InsufficientNearOriginSamples : NumericsError {
    explicit InsufficientNearOriginSamples(const std::string& msg) : NumericsError(msg) {}
};

struct EigenvaluePresent : NumericsError {
    explicit EigenvaluePresent(const std::string& msg) : NumericsError(msg) {}
};

struct NonCertifiedColumn : NumericsError {
    explicit NonCertifiedColumn(const std::string& msg) : NumericsError(msg) {}
};

}  // namespace halfline

#pragma once

#include <string>
#include <vector>

#include "halfline/config.hpp"
#include "halfline/parallel.hpp"
#include "halfline/scattering_data.hpp"
#include "halfline/types.hpp"

namespace halfline::marchenko {

/// Evaluator of the kernel
///   H(s,t) = (1-lambda)/2 [ sum_{k_j in Omega1 u Omega3} m_j e^{i k_j s + 8 i k_j^3 t}
///                         + sum_{z_j} m_j^2 e^{i z_j s + 8 i z_j^3 t} ]
///          + (1/2pi) oint_{dOmega2} c(k) e^{iks+8ik^3t} dk
///          + (1/2pi) int_R        r(k) e^{iks+8ik^3t} dk,
/// plus the collapsed t = 0 kernel using all upper-half-plane eigenvalues.
/// Immutable after construction; evaluation is pure.
class KernelField {
  public:
    explicit KernelField(const ScatteringData& data);

    int lambda() const { return lambda_; }

    cplx eval_c(double s, double t) const;
    double eval(double s, double t) const { return eval_c(s, t).real(); }
    /// (H, dH/ds).
    std::pair<cplx, cplx> eval_with_deriv(double s, double t) const;

    cplx h0_c(double s) const;
    double h0(double s) const { return h0_c(s).real(); }

    /// Smallest imaginary part among eigenvalues (1e300 when none).
    double kappa_min() const { return kappa_min_; }
    bool has_continuous() const { return has_continuous_; }
    bool trivial() const { return trivial_; }

    /// s beyond which |H(.,t)| stays below tol (scan + discrete estimate).
    double suggest_s_cut(double t, double tol) const;

  private:
    struct Term {
        cplx k, m;
    };
    std::vector<Term> disc_h_;   // Omega1 u Omega3 eigenvalues + Omega2 bc-eigenvalues
    std::vector<Term> disc_h0_;  // all C+ eigenvalues of s2+
    osc::LineQuad r_pos_, r_neg_, c_out_, c_in_;
    osc::PowerTail r_tail_, c_tail_;
    int lambda_ = -1;
    double kappa_min_ = 1e300;
    bool has_continuous_ = false;
    bool trivial_ = true;
};

struct KernelSliceOptions {
    double h_fine = 0.02;
    double h_coarse = 0.08;
    double fine_span = 8.0;
    double decay_tol = 1e-12;
    double s_cap = 240.0;
};

/// Fixed-t sample of the kernel with a cubic Hermite interpolant in s,
/// built once per time slice and then shared by all spatial solves.
class KernelSlice {
  public:
    static KernelSlice build(const KernelField& field, double t, const KernelSliceOptions& opts,
                             Exec exec);
    /// Direct (non-interpolated) slice for purely discrete kernels.
    static KernelSlice direct(const KernelField& field, double t);

    double operator()(double s) const;
    double t() const { return t_; }
    double s_cut() const { return s_cut_; }
    double max_imag() const { return max_imag_; }
    double scale() const { return scale_; }

  private:
    const KernelField* field_ = nullptr;  // only for direct mode
    bool direct_ = false;
    double t_ = 0.0, s_cut_ = 0.0, max_imag_ = 0.0, scale_ = 0.0;
    double h_fine_ = 0.0, h_coarse_ = 0.0, fine_end_ = 0.0;
    std::vector<double> h_fine_vals_, hp_fine_vals_, h_coarse_vals_, hp_coarse_vals_;
    double hermite(double s, double a, double h, const std::vector<double>& f,
                   const std::vector<double>& fp) const;
};

/// One Nystrom solve of the coupled integral equations at (x, t).
struct MarchenkoSolution {
    double x = 0.0, t = 0.0;
    std::vector<double> y_nodes, weights;
    std::vector<double> K1, K2;
    double K1_at_x = 0.0, K2_at_x = 0.0;
    double cond_estimate = 1.0;
    double tail_K1 = 0.0, tail_K2 = 0.0;  // |K| at the truncation edge
};

struct SolveOptions {
    NystromParams nystrom;
    double tol_solve = 1e-9;
    double y_span_cap = 220.0;
    double kappa_min = 1e300;   // from the data; sets the fallback span
};

MarchenkoSolution solve_marchenko_at(double x, const KernelSlice& slice, int lambda,
                                     const SolveOptions& opts);

/// q(x,t) = -2 lambda K2(x,x,t).
double reconstruct_q(double x, const KernelSlice& slice, int lambda, const SolveOptions& opts);

/// Reconstructed solution over an (x,t) lattice.
struct SolutionGrid {
    std::vector<double> x_nodes, t_nodes;
    std::vector<double> q;  // row-major, t outer, x inner
    double max_cond = 1.0;
    std::string provenance;

    double& at(std::size_t ix, std::size_t it) { return q[it * x_nodes.size() + ix]; }
    double at(std::size_t ix, std::size_t it) const { return q[it * x_nodes.size() + ix]; }
};

SolutionGrid reconstruct_grid(const ScatteringData& data, const ProblemConfig& cfg, Exec exec);

/// Finite-difference residual of the kernel transport law H_t + 8 H_xxx = 0
/// at one point (7-point 4th-order stencil in s, centered 2nd-order in t).
double kernel_transport_residual(const KernelField& field, double s, double t, double hs,
                                 double ht);

}  // namespace halfline::marchenko

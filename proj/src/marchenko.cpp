#include "halfline/marchenko.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "halfline/quadrature.hpp"
#include "halfline/region.hpp"

namespace halfline::marchenko {

namespace {
constexpr double inv_2pi = 1.0 / (2.0 * pi);
}

KernelField::KernelField(const ScatteringData& data)
    : r_pos_(data.r_pos),
      r_neg_(data.r_neg),
      c_out_(data.c_out),
      c_in_(data.c_in),
      r_tail_(data.r_tail),
      c_tail_(data.c_tail),
      lambda_(data.lambda) {
    const double factor = 0.5 * (1.0 - lambda_);
    for (std::size_t j = 0; j < data.eigenvalues_x.size(); ++j) {
        const cplx kj = data.eigenvalues_x[j];
        const cplx mj = data.norming_x[j];
        disc_h0_.push_back({kj, mj});
        if (in_omega13(kj)) disc_h_.push_back({kj, factor * mj});
        kappa_min_ = std::min(kappa_min_, kj.imag());
    }
    for (std::size_t j = 0; j < data.eigenvalues_bc.size(); ++j) {
        const cplx zj = data.eigenvalues_bc[j];
        disc_h_.push_back({zj, factor * data.norming_bc[j]});
        kappa_min_ = std::min(kappa_min_, zj.imag());
    }
    has_continuous_ = !r_pos_.empty() || !c_out_.empty();
    trivial_ = disc_h_.empty() && disc_h0_.empty() && !has_continuous_;
}

cplx KernelField::eval_c(double s, double t) const {
    cplx acc = 0.0;
    for (const Term& d : disc_h_) acc += d.m * std::exp(iu() * (d.k * s + 8.0 * d.k * d.k * d.k * t));
    cplx cont = 0.0;
    cont += osc::line_integral(r_pos_, s, t, 0);
    cont += osc::line_integral(r_neg_, s, t, 0);
    cont += osc::real_tail_pair(r_tail_, s, t, 0);
    cont += osc::line_integral(c_out_, s, t, 0);
    cont += osc::line_integral(c_in_, s, t, 0);
    cont += osc::ray_tail_pair(c_tail_, s, t, 0);
    return acc + inv_2pi * cont;
}

std::pair<cplx, cplx> KernelField::eval_with_deriv(double s, double t) const {
    cplx acc = 0.0, dacc = 0.0;
    for (const Term& d : disc_h_) {
        const cplx e = d.m * std::exp(iu() * (d.k * s + 8.0 * d.k * d.k * d.k * t));
        acc += e;
        dacc += iu() * d.k * e;
    }
    cplx cont = 0.0, dcont = 0.0;
    for (int p = 0; p < 2; ++p) {
        cplx v = 0.0;
        v += osc::line_integral(r_pos_, s, t, p);
        v += osc::line_integral(r_neg_, s, t, p);
        v += osc::real_tail_pair(r_tail_, s, t, p);
        v += osc::line_integral(c_out_, s, t, p);
        v += osc::line_integral(c_in_, s, t, p);
        v += osc::ray_tail_pair(c_tail_, s, t, p);
        (p == 0 ? cont : dcont) = v;
    }
    return {acc + inv_2pi * cont, dacc + inv_2pi * dcont};
}

cplx KernelField::h0_c(double s) const {
    cplx acc = 0.0;
    for (const Term& d : disc_h0_) acc += d.m * std::exp(iu() * d.k * s);
    cplx cont = 0.0;
    cont += osc::line_integral(r_pos_, s, 0.0, 0);
    cont += osc::line_integral(r_neg_, s, 0.0, 0);
    cont += osc::real_tail_pair(r_tail_, s, 0.0, 0);
    return acc + inv_2pi * cont;
}

double KernelField::suggest_s_cut(double t, double tol) const {
    double cut = 4.0;
    for (const Term& d : disc_h_) {
        const double amp = std::abs(d.m * std::exp(iu() * 8.0 * d.k * d.k * d.k * t));
        if (amp > tol && d.k.imag() > 0.0)
            cut = std::max(cut, std::log(amp / tol) / d.k.imag());
    }
    if (has_continuous_) {
        // coarse outward scan until a quiet stretch
        double s = cut;
        int quiet = 0;
        const double step = 2.0;
        double last_loud = cut;
        while (s < 200.0 && quiet < 4) {
            const double v = std::abs(eval_c(s, t));
            if (v > tol) {
                quiet = 0;
                last_loud = s;
            } else {
                ++quiet;
            }
            s += step;
        }
        cut = std::max(cut, last_loud + 2.0 * step);
    }
    return cut + 4.0;
}

KernelSlice KernelSlice::direct(const KernelField& field, double t) {
    KernelSlice sl;
    sl.field_ = &field;
    sl.direct_ = true;
    sl.t_ = t;
    sl.s_cut_ = 1e300;
    sl.scale_ = 1.0;
    return sl;
}

KernelSlice KernelSlice::build(const KernelField& field, double t, const KernelSliceOptions& opts,
                               Exec exec) {
    if (!field.has_continuous()) return direct(field, t);

    KernelSlice sl;
    sl.t_ = t;
    sl.s_cut_ = std::min(opts.s_cap, field.suggest_s_cut(t, opts.decay_tol));
    sl.h_fine_ = opts.h_fine;
    sl.h_coarse_ = opts.h_coarse;
    sl.fine_end_ = std::min(opts.fine_span, sl.s_cut_);

    const std::size_t n_fine = static_cast<std::size_t>(std::ceil(sl.fine_end_ / sl.h_fine_)) + 1;
    sl.fine_end_ = sl.h_fine_ * (n_fine - 1);
    std::size_t n_coarse = 0;
    if (sl.s_cut_ > sl.fine_end_)
        n_coarse = static_cast<std::size_t>(std::ceil((sl.s_cut_ - sl.fine_end_) / sl.h_coarse_));
    sl.s_cut_ = sl.fine_end_ + sl.h_coarse_ * n_coarse;

    sl.h_fine_vals_.resize(n_fine);
    sl.hp_fine_vals_.resize(n_fine);
    sl.h_coarse_vals_.resize(n_coarse);
    sl.hp_coarse_vals_.resize(n_coarse);

    std::vector<double> imtrack(n_fine + n_coarse, 0.0);
    parallel_for(
        n_fine + n_coarse,
        [&](std::size_t i) {
            double s;
            if (i < n_fine)
                s = i * sl.h_fine_;
            else
                s = sl.fine_end_ + (i - n_fine + 1) * sl.h_coarse_;
            const auto [h, hp] = field.eval_with_deriv(s, t);
            if (i < n_fine) {
                sl.h_fine_vals_[i] = h.real();
                sl.hp_fine_vals_[i] = hp.real();
            } else {
                sl.h_coarse_vals_[i - n_fine] = h.real();
                sl.hp_coarse_vals_[i - n_fine] = hp.real();
            }
            imtrack[i] = std::abs(h.imag());
        },
        exec);
    // coarse grid starts one step past fine_end; duplicate the junction value
    if (n_coarse > 0) {
        sl.h_coarse_vals_.insert(sl.h_coarse_vals_.begin(), sl.h_fine_vals_.back());
        sl.hp_coarse_vals_.insert(sl.hp_coarse_vals_.begin(), sl.hp_fine_vals_.back());
    }
    for (double v : imtrack) sl.max_imag_ = std::max(sl.max_imag_, v);
    for (double v : sl.h_fine_vals_) sl.scale_ = std::max(sl.scale_, std::abs(v));
    for (double v : sl.h_coarse_vals_) sl.scale_ = std::max(sl.scale_, std::abs(v));
    return sl;
}

double KernelSlice::hermite(double s, double a, double h, const std::vector<double>& f,
                            const std::vector<double>& fp) const {
    const double pos = (s - a) / h;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= f.size()) i = f.size() - 2;
    const double u = pos - i;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    return h00 * f[i] + h10 * h * fp[i] + h01 * f[i + 1] + h11 * h * fp[i + 1];
}

double KernelSlice::operator()(double s) const {
    if (direct_) return field_->eval(s, t_);
    if (s >= s_cut_) return 0.0;
    if (s < 0.0) s = 0.0;
    if (s <= fine_end_ && h_fine_vals_.size() >= 2)
        return hermite(s, 0.0, h_fine_, h_fine_vals_, hp_fine_vals_);
    if (h_coarse_vals_.size() >= 2)
        return hermite(s, fine_end_, h_coarse_, h_coarse_vals_, hp_coarse_vals_);
    return hermite(s, 0.0, h_fine_, h_fine_vals_, hp_fine_vals_);
}

MarchenkoSolution solve_marchenko_at(double x, const KernelSlice& slice, int lambda,
                                     const SolveOptions& opts) {
    MarchenkoSolution sol;
    sol.x = x;
    sol.t = slice.t();

    // Truncation: past the measured kernel decay; the eigenvalue-scale rule
    // x + max(40/kappa_min, 40) is the fallback for direct (non-sampled) slices.
    double span;
    if (slice.s_cut() < 1e299) {
        span = std::max(4.0, slice.s_cut() - 2.0 * x + 4.0);
    } else if (opts.kappa_min < 1e299) {
        span = std::max(40.0 / opts.kappa_min, 40.0);
    } else {
        span = 40.0;
    }
    span = std::min(span, opts.y_span_cap);
    const double y_max = x + span;

    // Composite GL panels locked to an absolute lattice so the node layout
    // varies smoothly with x.
    const double w = opts.nystrom.panel_width;
    const int order = opts.nystrom.order;
    const auto& [gx, gw] = gauss_legendre(order);
    std::vector<double> edges{x};
    double e = (std::floor(x / w) + 1.0) * w;
    for (; e < y_max - 0.5 * w; e += w) edges.push_back(e);
    edges.push_back(y_max);

    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1], half = 0.5 * (b - a);
        for (int j = 0; j < order; ++j) {
            sol.y_nodes.push_back(0.5 * (a + b) + half * gx[j]);
            sol.weights.push_back(half * gw[j]);
        }
    }
    const std::size_t n = sol.y_nodes.size();

    // Interleaved unknowns [K1(y0), K2(y0), K1(y1), ...].
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    Eigen::VectorXd b(2 * n);
    std::vector<double> hx(n);
    for (std::size_t i = 0; i < n; ++i) hx[i] = slice(x + sol.y_nodes[i]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double hij = slice(sol.y_nodes[i] + sol.y_nodes[j]) * sol.weights[j];
            A(2 * i, 2 * j + 1) += lambda * hij;
            A(2 * i + 1, 2 * j) += hij;
        }
        b(2 * i) = 0.0;
        b(2 * i + 1) = -hx[i];
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    sol.cond_estimate = 1.0 / std::max(lu.rcond(), 1e-300);
    if (lu.rcond() < 1e-13)
        throw SingularSystem("marchenko: near-singular discretized operator");
    Eigen::VectorXd u = lu.solve(b);
    // one step of iterative refinement
    u += lu.solve(b - A * u);

    sol.K1.resize(n);
    sol.K2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.K1[i] = u(2 * i);
        sol.K2[i] = u(2 * i + 1);
    }
    // Nystrom natural interpolation at y = x.
    double acc1 = 0.0, acc2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        acc1 += sol.weights[j] * sol.K2[j] * hx[j];
        acc2 += sol.weights[j] * sol.K1[j] * hx[j];
    }
    sol.K1_at_x = -lambda * acc1;
    sol.K2_at_x = -slice(2.0 * x) - acc2;
    sol.tail_K1 = std::abs(sol.K1.back());
    sol.tail_K2 = std::abs(sol.K2.back());
    return sol;
}

double reconstruct_q(double x, const KernelSlice& slice, int lambda, const SolveOptions& opts) {
    const auto sol = solve_marchenko_at(x, slice, lambda, opts);
    return -2.0 * lambda * sol.K2_at_x;
}

SolutionGrid reconstruct_grid(const ScatteringData& data, const ProblemConfig& cfg, Exec exec) {
    SolutionGrid grid;
    grid.x_nodes = cfg.x_grid.nodes();
    grid.t_nodes = cfg.t_grid.nodes();
    grid.q.assign(grid.x_nodes.size() * grid.t_nodes.size(), 0.0);

    const KernelField field(data);
    if (field.trivial()) return grid;

    SolveOptions opts;
    opts.nystrom = cfg.nystrom;
    opts.tol_solve = cfg.tol.solve;
    opts.kappa_min = field.kappa_min();

    KernelSliceOptions sopts;
    sopts.decay_tol = std::min(1e-12, cfg.tol.quad);

    double max_cond = 1.0;
    for (std::size_t it = 0; it < grid.t_nodes.size(); ++it) {
        const KernelSlice slice = KernelSlice::build(field, grid.t_nodes[it], sopts, exec);
        std::vector<double> conds(grid.x_nodes.size(), 1.0);
        parallel_for(
            grid.x_nodes.size(),
            [&](std::size_t ix) {
                const auto sol = solve_marchenko_at(grid.x_nodes[ix], slice, data.lambda, opts);
                grid.at(ix, it) = -2.0 * data.lambda * sol.K2_at_x;
                conds[ix] = sol.cond_estimate;
            },
            exec);
        for (double c : conds) max_cond = std::max(max_cond, c);
    }
    grid.max_cond = max_cond;
    return grid;
}

double kernel_transport_residual(const KernelField& field, double s, double t, double hs,
                                 double ht) {
    // H_t: centered 2nd order; H_sss: 7-point 4th order.
    const double ht_num =
        (field.eval(s, t + ht) - field.eval(s, t - ht)) / (2.0 * ht);
    const double c1 = -13.0 / 8.0, c2 = 1.0, c3 = -1.0 / 8.0;
    double d3 = 0.0;
    d3 += c1 * (field.eval(s + hs, t) - field.eval(s - hs, t));
    d3 += c2 * (field.eval(s + 2 * hs, t) - field.eval(s - 2 * hs, t));
    d3 += c3 * (field.eval(s + 3 * hs, t) - field.eval(s - 3 * hs, t));
    d3 /= hs * hs * hs;
    return std::abs(ht_num + 8.0 * d3);
}

}  // namespace halfline::marchenko

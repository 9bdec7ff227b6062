#include "halfline/zerofind.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace halfline {

namespace {

double arg_change(const std::function<cplx(cplx)>& f, const Curve& c, double ta, double tb,
                  cplx fa, cplx fb, double min_boundary, int depth) {
    const double d = std::arg(fb / fa);
    if (std::abs(d) <= 0.8 && depth > 2) return d;
    if (depth > 44) {
        if (std::abs(d) > 2.6)
            throw BoundaryZero("winding: argument jump persists at finest sampling");
        return d;
    }
    const double tm = 0.5 * (ta + tb);
    const cplx fm = f(c.gamma(tm));
    if (std::abs(fm) < min_boundary) throw BoundaryZero("winding: |f| ~ 0 on cell boundary");
    return arg_change(f, c, ta, tm, fa, fm, min_boundary, depth + 1) +
           arg_change(f, c, tm, tb, fm, fb, min_boundary, depth + 1);
}

}  // namespace

int winding_number(const std::function<cplx(cplx)>& f, const std::vector<Curve>& loop,
                   double min_boundary) {
    double total = 0.0;
    for (const Curve& c : loop) {
        const cplx fa = f(c.gamma(0.0)), fb = f(c.gamma(1.0));
        if (std::abs(fa) < min_boundary || std::abs(fb) < min_boundary)
            throw BoundaryZero("winding: |f| ~ 0 on cell boundary");
        total += arg_change(f, c, 0.0, 1.0, fa, fb, min_boundary, 0);
    }
    const double w = total / (2.0 * pi);
    const int n = static_cast<int>(std::lround(w));
    if (std::abs(w - n) > 0.25)
        throw MultipleZeroSuspected("winding: non-integer winding number");
    return n;
}

cplx newton_polish(const std::function<cplx(cplx)>& f, cplx z0, double tol_root) {
    cplx z = z0;
    for (int it = 0; it < 60; ++it) {
        const double h = 1e-6 * std::max(1.0, std::abs(z));
        const cplx fp = (f(z + h) - f(z - h)) / (2.0 * h);
        if (std::abs(fp) == 0.0) throw MultipleZeroSuspected("newton: derivative vanished");
        const cplx dz = f(z) / fp;
        z -= dz;
        if (std::abs(dz) <= tol_root * std::max(1.0, std::abs(z))) return z;
    }
    throw MultipleZeroSuspected("newton: no convergence (basin collapse?)");
}

namespace {

struct Cell {
    // rectangle in a coordinate chart; chart maps (u,v) in cell to complex k
    double u0, u1, v0, v1;
    int depth;
};

template <class Chart>
std::vector<Curve> cell_loop(const Chart& chart, const Cell& c) {
    std::vector<Curve> loop;
    loop.push_back({[=](double t) { return chart(c.u0 + (c.u1 - c.u0) * t, c.v0); }});
    loop.push_back({[=](double t) { return chart(c.u1, c.v0 + (c.v1 - c.v0) * t); }});
    loop.push_back({[=](double t) { return chart(c.u1 - (c.u1 - c.u0) * t, c.v1); }});
    loop.push_back({[=](double t) { return chart(c.u0, c.v1 - (c.v1 - c.v0) * t); }});
    return loop;
}

template <class Chart>
std::vector<cplx> find_zeros_chart(const std::function<cplx(cplx)>& f, const Chart& chart,
                                   double u0, double u1, double v0, double v1,
                                   const ZeroFindOptions& opts) {
    std::vector<cplx> zeros;
    std::deque<Cell> queue{{u0, u1, v0, v1, 0}};
    while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        int count = 0;
        // A zero exactly on an internal subdivision line makes the winding
        // sampler trip BoundaryZero. Retry with a slightly perturbed cell:
        // only the outermost boundary is part of the problem statement.
        bool counted = false;
        double shift = 0.0;
        for (int attempt = 0; attempt < 3 && !counted; ++attempt) {
            try {
                Cell cc = c;
                cc.u0 -= shift;
                cc.u1 += 2.1 * shift;
                cc.v1 += shift;
                if (cc.v0 > v0 + 1e-14) cc.v0 -= 0.9 * shift;
                count = winding_number(f, cell_loop(chart, cc), opts.min_boundary);
                counted = true;
            } catch (const BoundaryZero&) {
                if (c.depth == 0 && attempt == 0) throw;  // outer boundary: genuine error
                shift = (shift == 0.0) ? 1e-4 * (c.u1 - c.u0) : 3.0 * shift;
            }
        }
        if (!counted)
            throw MultipleZeroSuspected("zero finder: persistent boundary zero while subdividing");
        if (count == 0) continue;
        if (count == 1) {
            const cplx seed = chart(0.5 * (c.u0 + c.u1), 0.5 * (c.v0 + c.v1));
            try {
                const cplx z = newton_polish(f, seed, opts.tol_root);
                zeros.push_back(z);
                continue;
            } catch (const MultipleZeroSuspected&) {
                if (c.depth >= opts.max_depth) throw;
                // fall through to subdivision
            }
        }
        if (c.depth >= opts.max_depth)
            throw MultipleZeroSuspected("zero finder: count > 1 at finest subdivision");
        const double um = 0.5 * (c.u0 + c.u1), vm = 0.5 * (c.v0 + c.v1);
        queue.push_back({c.u0, um, c.v0, vm, c.depth + 1});
        queue.push_back({um, c.u1, c.v0, vm, c.depth + 1});
        queue.push_back({c.u0, um, vm, c.v1, c.depth + 1});
        queue.push_back({um, c.u1, vm, c.v1, c.depth + 1});
    }
    // dedupe and sort deterministically by (Re, Im)
    std::sort(zeros.begin(), zeros.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<cplx> unique;
    for (const cplx& z : zeros) {
        if (unique.empty() || std::abs(z - unique.back()) > 100.0 * opts.tol_root)
            unique.push_back(z);
    }
    return unique;
}

}  // namespace

std::vector<cplx> find_zeros_rect(const std::function<cplx(cplx)>& f, cplx lo, cplx hi,
                                  const ZeroFindOptions& opts) {
    auto chart = [](double u, double v) { return cplx(u, v); };
    return find_zeros_chart(f, chart, lo.real(), hi.real(), lo.imag(), hi.imag(), opts);
}

std::vector<cplx> find_zeros_sector(const std::function<cplx(cplx)>& f, double a0, double a1,
                                    double r0, double r1, const ZeroFindOptions& opts) {
    auto chart = [](double u, double v) { return std::polar(v, u); };  // u = arg, v = radius
    return find_zeros_chart(f, chart, a0, a1, r0, r1, opts);
}

cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx z0, double radius, int nodes) {
    cplx acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * pi * j / nodes;
        const cplx e = std::polar(1.0, th);
        // f(z0 + r e) / (r e)^2 * i r e dtheta / (2 pi i) -> mean of f/(r e)
        acc += f(z0 + radius * e) / e;
    }
    return acc / (static_cast<double>(nodes) * radius);
}

cplx cauchy_residue(const std::function<cplx(cplx)>& f, cplx z0, double radius, int nodes) {
    cplx acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * pi * j / nodes;
        const cplx e = std::polar(1.0, th);
        acc += f(z0 + radius * e) * e;
    }
    return acc * radius / static_cast<double>(nodes);
}

}  // namespace halfline

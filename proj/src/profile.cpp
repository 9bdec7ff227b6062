#include "halfline/profile.hpp"

#include <algorithm>
#include <cmath>

namespace halfline {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw ConfigError("spline needs >= 2 samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw ConfigError("spline abscissae must be strictly increasing");
    m_.assign(n, 0.0);
    std::vector<double> u(n, 0.0), z(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
        const double p = 2.0 * (h0 + h1) - h0 * u[i - 1];
        u[i] = h1 / p;
        const double rhs = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        z[i] = (rhs - h0 * z[i - 1]) / p;
    }
    for (std::size_t i = n - 1; i-- > 1;) m_[i] = z[i] - u[i] * m_[i + 1];
}

double CubicSpline::operator()(double x) const {
    if (x_.empty() || x < x_.front() || x > x_.back()) return 0.0;
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = std::min(x_.size() - 2, static_cast<std::size_t>(
                                                      std::max<std::ptrdiff_t>(0, it - x_.begin() - 1)));
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::deriv(double x) const {
    if (x_.empty() || x < x_.front() || x > x_.back()) return 0.0;
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = std::min(x_.size() - 2, static_cast<std::size_t>(
                                                      std::max<std::ptrdiff_t>(0, it - x_.begin() - 1)));
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

double Profile::decay_point(double eps, double x_hint) const {
    double x_end = std::max(4.0, x_hint);
    const auto tail_small = [&](double from) {
        for (int i = 0; i <= 64; ++i) {
            const double x = from + (x_end + 8.0 - from) * i / 64.0;
            if (std::abs(fn_(x)) > eps) return false;
        }
        return true;
    };
    // grow until the scan tail is quiet
    for (int round = 0; round < 24; ++round) {
        double x = 0.0;
        double last_loud = -1.0;
        const int nscan = 512;
        for (int i = 0; i <= nscan; ++i) {
            x = x_end * i / nscan;
            if (std::abs(fn_(x)) > eps) last_loud = x;
        }
        if (last_loud < 0.0) return std::min(4.0, x_end);
        if (last_loud < 0.95 * x_end && tail_small(last_loud)) return last_loud + 0.05 * x_end;
        x_end *= 1.6;
    }
    return x_end;
}

double Soliton::q(double x, double t) const {
    const double xi = 2.0 * kappa * (x - 4.0 * kappa * kappa * t - x0);
    return sign * 2.0 * kappa / std::cosh(xi);
}

double Soliton::qx(double x, double t) const {
    const double xi = 2.0 * kappa * (x - 4.0 * kappa * kappa * t - x0);
    const double s = 1.0 / std::cosh(xi);
    return sign * (-4.0 * kappa * kappa) * s * std::tanh(xi);
}

double Soliton::qxx(double x, double t) const {
    const double xi = 2.0 * kappa * (x - 4.0 * kappa * kappa * t - x0);
    const double s = 1.0 / std::cosh(xi);
    return sign * (-8.0 * kappa * kappa * kappa) * s * (2.0 * s * s - 1.0);
}

double Soliton::qt(double x, double t) const {
    // chain rule: d/dt = -4 kappa^2 d/dx
    return -4.0 * kappa * kappa * qx(x, t);
}

Profile Soliton::initial() const {
    const Soliton s = *this;
    return Profile([s](double x) { return s.q(x, 0.0); });
}
Profile Soliton::boundary_v() const {
    const Soliton s = *this;
    return Profile([s](double t) { return s.q(0.0, t); });
}
Profile Soliton::boundary_v1() const {
    const Soliton s = *this;
    return Profile([s](double t) { return s.qx(0.0, t); });
}
Profile Soliton::boundary_v2() const {
    const Soliton s = *this;
    return Profile([s](double t) { return s.qxx(0.0, t); });
}

void FunctionSpec::validate() const {
    if (is_table()) {
        if (table.size() < 2) throw ConfigError("tabulated spec needs >= 2 samples");
        for (std::size_t i = 1; i < table.size(); ++i)
            if (!(table[i].first > table[i - 1].first))
                throw ConfigError("tabulated spec abscissae must be strictly increasing");
        return;
    }
    if (preset == "zero") return;
    if (preset == "gaussian_bump") {
        if (!params.count("amplitude") || !params.count("center") || !params.count("width"))
            throw ConfigError("gaussian_bump needs amplitude/center/width");
        if (params.at("width") <= 0) throw ConfigError("gaussian_bump width must be positive");
        return;
    }
    if (preset == "soliton_trace") {
        if (!params.count("kappa")) throw ConfigError("soliton_trace needs kappa");
        if (params.at("kappa") <= 0) throw ConfigError("soliton_trace kappa must be positive");
        if (component != "u" && component != "v" && component != "v1" && component != "v2")
            throw ConfigError("soliton_trace component must be u/v/v1/v2");
        return;
    }
    throw ConfigError("unknown preset '" + preset + "'");
}

Profile FunctionSpec::make() const {
    validate();
    if (is_table()) {
        std::vector<double> x, y;
        x.reserve(table.size());
        y.reserve(table.size());
        for (auto& [a, b] : table) {
            x.push_back(a);
            y.push_back(b);
        }
        auto sp = std::make_shared<CubicSpline>(std::move(x), std::move(y));
        return Profile([sp](double v) { return (*sp)(v); });
    }
    if (preset == "zero") return Profile();
    if (preset == "gaussian_bump") {
        const double a = params.at("amplitude"), c = params.at("center"), w = params.at("width");
        return Profile([a, c, w](double x) {
            const double u = (x - c) / w;
            return a * std::exp(-u * u);
        });
    }
    // soliton_trace
    Soliton s;
    s.kappa = params.at("kappa");
    s.x0 = params.count("x0") ? params.at("x0") : 0.0;
    s.sign = params.count("sign") ? params.at("sign") : 1.0;
    if (component == "u") return s.initial();
    if (component == "v") return s.boundary_v();
    if (component == "v1") return s.boundary_v1();
    return s.boundary_v2();
}

}  // namespace halfline

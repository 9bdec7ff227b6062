#include "halfline/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace halfline {

using nlohmann::ordered_json;

std::vector<double> GridRange::nodes() const {
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = min;
        return v;
    }
    for (int i = 0; i < count; ++i) v[i] = min + (max - min) * i / (count - 1);
    return v;
}

std::vector<double> ProblemConfig::k_grid() const {
    std::vector<double> v(k_count);
    for (int i = 0; i < k_count; ++i) v[i] = -k_max + 2.0 * k_max * i / (k_count - 1);
    return v;
}

void ProblemConfig::validate() const {
    if (lambda != 1 && lambda != -1) throw ConfigError("lambda must be +1 or -1");
    if (!infinite_T && T <= 0) throw ConfigError("T must be positive or \"inf\"");
    if (x_max <= 0) throw ConfigError("x_max must be positive");
    if (t_eff <= 0) throw ConfigError("t_eff must be positive");
    if (nystrom.order < 8) throw ConfigError("nystrom order must be >= 8");
    if (nystrom.panel_width <= 0) throw ConfigError("nystrom panel_width must be positive");
    if (tol.step <= 0 || tol.quad <= 0 || tol.root <= 0 || tol.solve <= 0)
        throw ConfigError("all tolerances must be positive");
    if (k_count < 3 || k_count % 2 == 0) throw ConfigError("k_count must be odd and >= 3");
    if (k_max <= 0 || ray_smax <= 0) throw ConfigError("k_max/ray_smax must be positive");
    if (ray_nodes < 16) throw ConfigError("ray_nodes must be >= 16");
    if (x_grid.count < 2 || t_grid.count < 1) throw ConfigError("grid counts too small");
    u_spec.validate();
    v_spec.validate();
    v1_spec.validate();
    v2_spec.validate();
}

namespace {

FunctionSpec spec_from_json(const ordered_json& j) {
    FunctionSpec s;
    if (j.contains("table")) {
        for (const auto& row : j.at("table"))
            s.table.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return s;
    }
    s.preset = j.at("preset").get<std::string>();
    if (j.contains("params"))
        for (auto& [key, val] : j.at("params").items()) {
            if (key == "component")
                s.component = val.get<std::string>();
            else
                s.params[key] = val.get<double>();
        }
    return s;
}

ordered_json spec_to_json(const FunctionSpec& s) {
    ordered_json j;
    if (s.is_table()) {
        ordered_json rows = ordered_json::array();
        for (auto& [x, y] : s.table) rows.push_back({x, y});
        j["table"] = rows;
        return j;
    }
    j["preset"] = s.preset;
    if (!s.params.empty() || !s.component.empty()) {
        ordered_json p;
        for (auto& [k, v] : s.params) p[k] = v;
        if (!s.component.empty()) p["component"] = s.component;
        j["params"] = p;
    }
    return j;
}

}  // namespace

ProblemConfig ProblemConfig::from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    ProblemConfig c;
    try {
        c.lambda = j.at("lambda").get<int>();
        if (j.at("T").is_string()) {
            if (j.at("T").get<std::string>() != "inf") throw ConfigError("T must be number or \"inf\"");
            c.infinite_T = true;
        } else {
            c.T = j.at("T").get<double>();
        }
        c.u_spec = spec_from_json(j.at("u"));
        c.v_spec = j.contains("v") ? spec_from_json(j.at("v")) : FunctionSpec{"zero", {}, "", {}};
        c.v1_spec = j.contains("v1") ? spec_from_json(j.at("v1")) : FunctionSpec{"zero", {}, "", {}};
        c.v2_spec = j.contains("v2") ? spec_from_json(j.at("v2")) : FunctionSpec{"zero", {}, "", {}};
        if (j.contains("grids")) {
            const auto& g = j.at("grids");
            if (g.contains("x_max_data")) {
                c.x_max = g.at("x_max_data").get<double>();
                c.x_max_auto = false;
            }
            if (g.contains("t_eff")) {
                c.t_eff = g.at("t_eff").get<double>();
                c.t_eff_auto = false;
            }
            if (g.contains("k_max")) c.k_max = g.at("k_max").get<double>();
            if (g.contains("k_count")) c.k_count = g.at("k_count").get<int>();
            if (g.contains("ray_smax")) c.ray_smax = g.at("ray_smax").get<double>();
            if (g.contains("ray_nodes")) c.ray_nodes = g.at("ray_nodes").get<int>();
            auto range = [](const ordered_json& r) {
                return GridRange{r.at("min").get<double>(), r.at("max").get<double>(),
                                 r.at("count").get<int>()};
            };
            if (g.contains("x")) c.x_grid = range(g.at("x"));
            if (g.contains("t")) c.t_grid = range(g.at("t"));
        }
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            if (t.contains("step")) c.tol.step = t.at("step").get<double>();
            if (t.contains("quad")) c.tol.quad = t.at("quad").get<double>();
            if (t.contains("root")) c.tol.root = t.at("root").get<double>();
            if (t.contains("solve")) c.tol.solve = t.at("solve").get<double>();
        }
        if (j.contains("nystrom")) {
            const auto& n = j.at("nystrom");
            if (n.contains("order")) c.nystrom.order = n.at("order").get<int>();
            if (n.contains("panel_width")) c.nystrom.panel_width = n.at("panel_width").get<double>();
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config schema error: ") + e.what());
    }
    c.validate();
    return c;
}

ProblemConfig ProblemConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ProblemConfig::to_json_text() const {
    ordered_json j;
    j["lambda"] = lambda;
    if (infinite_T)
        j["T"] = "inf";
    else
        j["T"] = T;
    j["u"] = spec_to_json(u_spec);
    j["v"] = spec_to_json(v_spec);
    j["v1"] = spec_to_json(v1_spec);
    j["v2"] = spec_to_json(v2_spec);
    ordered_json g;
    if (!x_max_auto) g["x_max_data"] = x_max;
    if (!t_eff_auto) g["t_eff"] = t_eff;
    g["k_max"] = k_max;
    g["k_count"] = k_count;
    g["ray_smax"] = ray_smax;
    g["ray_nodes"] = ray_nodes;
    g["x"] = {{"min", x_grid.min}, {"max", x_grid.max}, {"count", x_grid.count}};
    g["t"] = {{"min", t_grid.min}, {"max", t_grid.max}, {"count", t_grid.count}};
    j["grids"] = g;
    j["tolerances"] = {{"step", tol.step}, {"quad", tol.quad}, {"root", tol.root},
                       {"solve", tol.solve}};
    j["nystrom"] = {{"order", nystrom.order}, {"panel_width", nystrom.panel_width}};
    return j.dump(2) + "\n";
}

ProblemConfig ProblemConfig::soliton_case(double kappa, double x0, double T) {
    ProblemConfig c;
    c.lambda = -1;
    c.T = T;
    std::map<std::string, double> p{{"kappa", kappa}, {"x0", x0}, {"sign", 1.0}};
    c.u_spec = FunctionSpec{"soliton_trace", p, "u", {}};
    c.v_spec = FunctionSpec{"soliton_trace", p, "v", {}};
    c.v1_spec = FunctionSpec{"soliton_trace", p, "v1", {}};
    c.v2_spec = FunctionSpec{"soliton_trace", p, "v2", {}};
    return c;
}

ProblemConfig ProblemConfig::gaussian_case(double amplitude, double center, double width,
                                           double T) {
    ProblemConfig c;
    c.lambda = 1;
    c.T = T;
    c.u_spec = FunctionSpec{
        "gaussian_bump", {{"amplitude", amplitude}, {"center", center}, {"width", width}}, "", {}};
    c.v_spec = c.v1_spec = c.v2_spec = FunctionSpec{"zero", {}, "", {}};
    return c;
}

ProblemConfig ProblemConfig::zero_case(int lambda, double T) {
    ProblemConfig c;
    c.lambda = lambda;
    c.T = T;
    c.u_spec = c.v_spec = c.v1_spec = c.v2_spec = FunctionSpec{"zero", {}, "", {}};
    return c;
}

}  // namespace halfline

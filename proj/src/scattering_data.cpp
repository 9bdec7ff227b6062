#include "halfline/scattering_data.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace halfline {

using nlohmann::ordered_json;

cplx ScatteringData::r_at(double k) const {
    if (k >= 0.0) return r_pos.empty() ? cplx(0.0) : r_pos.amp_at(k);
    return r_neg.empty() ? cplx(0.0) : r_neg.amp_at(-k);
}

cplx ScatteringData::c_at_ray(double sigma, bool outgoing) const {
    const osc::LineQuad& lq = outgoing ? c_out : c_in;
    return lq.empty() ? cplx(0.0) : lq.amp_at(sigma);
}

namespace {

ordered_json cvec_to_json(const std::vector<cplx>& v) {
    ordered_json arr = ordered_json::array();
    for (const cplx& z : v) arr.push_back({z.real(), z.imag()});
    return arr;
}

std::vector<cplx> cvec_from_json(const ordered_json& j) {
    std::vector<cplx> v;
    for (const auto& e : j) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return v;
}

ordered_json quad_to_json(const osc::LineQuad& lq) {
    ordered_json j;
    j["dir"] = {lq.dir.real(), lq.dir.imag()};
    j["orient"] = lq.orient;
    j["degree"] = lq.degree;
    j["edges"] = lq.edges;
    ordered_json panels = ordered_json::array();
    for (const auto& smp : lq.samples) panels.push_back(cvec_to_json(smp));
    j["samples"] = panels;
    return j;
}

osc::LineQuad quad_from_json(const ordered_json& j) {
    osc::LineQuad lq;
    lq.dir = cplx(j.at("dir").at(0).get<double>(), j.at("dir").at(1).get<double>());
    lq.orient = j.at("orient").get<double>();
    lq.degree = j.at("degree").get<int>();
    lq.edges = j.at("edges").get<std::vector<double>>();
    for (const auto& p : j.at("samples")) lq.samples.push_back(cvec_from_json(p));
    lq.refresh();
    return lq;
}

ordered_json tail_to_json(const osc::PowerTail& t) {
    ordered_json j;
    j["sigma0"] = t.sigma0;
    j["coeff"] = cvec_to_json(t.coeff);
    return j;
}

osc::PowerTail tail_from_json(const ordered_json& j) {
    osc::PowerTail t;
    t.sigma0 = j.at("sigma0").get<double>();
    t.coeff = cvec_from_json(j.at("coeff"));
    return t;
}

}  // namespace

std::string ScatteringData::to_json_text() const {
    ordered_json j;
    j["lambda"] = lambda;
    if (infinite_T)
        j["T"] = "inf";
    else
        j["T"] = T;
    j["t_eff"] = t_eff;
    j["x_max"] = x_max;
    j["eigenvalues_x"] = cvec_to_json(eigenvalues_x);
    j["norming_x"] = cvec_to_json(norming_x);
    j["eigenvalues_bc"] = cvec_to_json(eigenvalues_bc);
    j["norming_bc"] = cvec_to_json(norming_bc);
    ordered_json r;
    r["k"] = r_grid;
    r["value"] = cvec_to_json(r_values);
    j["r_samples"] = r;
    j["r_quad_pos"] = quad_to_json(r_pos);
    j["r_quad_neg"] = quad_to_json(r_neg);
    j["c_quad_out"] = quad_to_json(c_out);
    j["c_quad_in"] = quad_to_json(c_in);
    j["r_tail"] = tail_to_json(r_tail);
    j["c_tail"] = tail_to_json(c_tail);
    j["defects"] = {{"r_symmetry", defect_r_symmetry},
                    {"c_symmetry", defect_c_symmetry},
                    {"pairing", defect_pairing}};
    return j.dump(2) + "\n";
}

ScatteringData ScatteringData::from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("scattering data JSON parse error: ") + e.what());
    }
    ScatteringData d;
    try {
        d.lambda = j.at("lambda").get<int>();
        if (j.at("T").is_string())
            d.infinite_T = true;
        else
            d.T = j.at("T").get<double>();
        d.t_eff = j.at("t_eff").get<double>();
        d.x_max = j.at("x_max").get<double>();
        d.eigenvalues_x = cvec_from_json(j.at("eigenvalues_x"));
        d.norming_x = cvec_from_json(j.at("norming_x"));
        d.eigenvalues_bc = cvec_from_json(j.at("eigenvalues_bc"));
        d.norming_bc = cvec_from_json(j.at("norming_bc"));
        d.r_grid = j.at("r_samples").at("k").get<std::vector<double>>();
        d.r_values = cvec_from_json(j.at("r_samples").at("value"));
        d.r_pos = quad_from_json(j.at("r_quad_pos"));
        d.r_neg = quad_from_json(j.at("r_quad_neg"));
        d.c_out = quad_from_json(j.at("c_quad_out"));
        d.c_in = quad_from_json(j.at("c_quad_in"));
        d.r_tail = tail_from_json(j.at("r_tail"));
        d.c_tail = tail_from_json(j.at("c_tail"));
        if (j.contains("defects")) {
            d.defect_r_symmetry = j.at("defects").at("r_symmetry").get<double>();
            d.defect_c_symmetry = j.at("defects").at("c_symmetry").get<double>();
            d.defect_pairing = j.at("defects").at("pairing").get<double>();
        }
    } catch (const std::exception& e) {
        throw ConfigError(std::string("scattering data schema error: ") + e.what());
    }
    return d;
}

ScatteringData ScatteringData::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scattering data file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

}  // namespace halfline

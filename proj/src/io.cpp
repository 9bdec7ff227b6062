#include "halfline/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace halfline::io {

using nlohmann::ordered_json;

std::string grid_to_csv(const marchenko::SolutionGrid& grid) {
    std::string out = "x,t,q\n";
    char buf[96];
    for (std::size_t it = 0; it < grid.t_nodes.size(); ++it) {
        for (std::size_t ix = 0; ix < grid.x_nodes.size(); ++ix) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", grid.x_nodes[ix],
                          grid.t_nodes[it], grid.at(ix, it));
            out += buf;
        }
    }
    return out;
}

marchenko::SolutionGrid grid_from_csv(const std::string& text) {
    marchenko::SolutionGrid grid;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,t,q", 0) != 0)
        throw ConfigError("solution CSV: missing x,t,q header");
    std::vector<double> xs, ts, qs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x, t, q;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &t, &q) != 3)
            throw ConfigError("solution CSV: malformed row '" + line + "'");
        xs.push_back(x);
        ts.push_back(t);
        qs.push_back(q);
    }
    // recover the lattice: x varies fastest
    std::size_t nx = xs.size();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (std::abs(xs[i] - xs[0]) < 1e-14) {
            nx = i;
            break;
        }
    }
    if (nx == 0 || xs.size() % nx != 0) throw ConfigError("solution CSV: ragged lattice");
    const std::size_t nt = xs.size() / nx;
    grid.x_nodes.assign(xs.begin(), xs.begin() + nx);
    grid.t_nodes.resize(nt);
    for (std::size_t it = 0; it < nt; ++it) grid.t_nodes[it] = ts[it * nx];
    grid.q = qs;
    return grid;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

void RunManifest::record(const std::string& path, const std::string& content) {
    files.emplace_back(path, fnv1a64_hex(content));
}

std::string RunManifest::to_json_text() const {
    ordered_json j;
    j["command"] = command;
    j["config"] = config_path;
    j["config_hash"] = config_hash;
    j["output_dir"] = output_dir;
    ordered_json arr = ordered_json::array();
    for (const auto& [p, h] : files) arr.push_back({{"path", p}, {"hash", h}});
    j["files"] = arr;
    return j.dump(2) + "\n";
}

}  // namespace halfline::io

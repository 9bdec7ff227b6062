// Command-line driver: forward scattering, data validation, Marchenko
// reconstruction, verification oracles, and the exact-soliton generator.
//
// Exit codes: 0 success; 1 configuration or numerical failure;
// 2 admissible-class violations (real/multiple zeros); 3 singular Marchenko
// system; 4 failed validation/verification.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "halfline/config.hpp"
#include "halfline/io.hpp"
#include "halfline/marchenko.hpp"
#include "halfline/parallel.hpp"
#include "halfline/scattering.hpp"
#include "halfline/validate.hpp"
#include "halfline/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace halfline;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::string data_path;
    std::string solution_path;
    int threads = 0;
    int nystrom_n = 0;
    bool skip_validate = false;
    bool emit_kernel = false;
};

void apply_threads(const CommonArgs& a) {
    int n = a.threads;
    if (n == 0) {
        if (const char* env = std::getenv("HALFLINE_IST_THREADS")) n = std::atoi(env);
    }
    if (n > 0) set_max_threads(n);
}

ProblemConfig load_config(const CommonArgs& a) {
    ProblemConfig cfg = ProblemConfig::from_json_file(a.config_path);
    if (a.nystrom_n > 0) cfg.nystrom.order = a.nystrom_n;
    return cfg;
}

io::RunManifest make_manifest(const std::string& command, const CommonArgs& a) {
    io::RunManifest m;
    m.command = command;
    m.config_path = a.config_path;
    m.config_hash = io::fnv1a64_hex(io::read_text_file(a.config_path));
    m.output_dir = a.out_dir;
    return m;
}

void emit(io::RunManifest& m, const CommonArgs& a, const std::string& name,
          const std::string& content) {
    const std::string path = (fs::path(a.out_dir) / name).string();
    io::write_text_file(path, content);
    m.record(name, content);
}

void finish(io::RunManifest& m, const CommonArgs& a) {
    const std::string path = (fs::path(a.out_dir) / "run_manifest.json").string();
    io::write_text_file(path, m.to_json_text());
}

int cmd_forward(const CommonArgs& a) {
    const ProblemConfig cfg = load_config(a);
    auto manifest = make_manifest("forward", a);
    scat::Forward fwd(cfg);
    const ScatteringData data = fwd.assemble();
    emit(manifest, a, "scattering_data.json", data.to_json_text());

    ordered_json diag;
    diag["x_max_effective"] = fwd.x_max();
    diag["t_horizon_effective"] = fwd.T_eff();
    diag["eigenvalues_found"] = data.eigenvalues_x.size() + data.eigenvalues_bc.size();
    diag["defect_r_symmetry"] = data.defect_r_symmetry;
    diag["defect_c_symmetry"] = data.defect_c_symmetry;
    diag["defect_pairing"] = data.defect_pairing;
    {
        std::vector<double> ks;
        for (double k = 0.5; k <= 4.0; k += 0.5) ks.push_back(k);
        ordered_json nu = ordered_json::array();
        if (!cfg.infinite_T) {
            for (auto& [k, v] : fwd.nu_diagnostic(ks)) nu.push_back({k, v});
        }
        diag["nu_diagnostic"] = nu;
    }
    emit(manifest, a, "forward_diagnostics.json", diag.dump(2) + "\n");

    if (!a.skip_validate) {
        validate::ValidationContext ctx;
        ctx.s2_plus = [&fwd](cplx k) { return fwd.s_plus(k).second; };
        const auto report = validate::run_all(data, cfg, ctx);
        emit(manifest, a, "validation_report.json", report.to_json_text());
    }
    finish(manifest, a);
    return 0;
}

int cmd_validate(const CommonArgs& a) {
    const ProblemConfig cfg = load_config(a);
    auto manifest = make_manifest("validate", a);
    const ScatteringData data = ScatteringData::from_json_file(a.data_path);
    scat::Forward fwd(cfg);
    validate::ValidationContext ctx;
    ctx.s2_plus = [&fwd](cplx k) { return fwd.s_plus(k).second; };
    const auto report = validate::run_all(data, cfg, ctx);
    emit(manifest, a, "validation_report.json", report.to_json_text());
    finish(manifest, a);
    return report.overall ? 0 : 4;
}

int cmd_solve(const CommonArgs& a) {
    const ProblemConfig cfg = load_config(a);
    auto manifest = make_manifest("solve", a);
    const ScatteringData data = ScatteringData::from_json_file(a.data_path);

    if (!a.skip_validate) {
        const auto report = validate::run_all(data, cfg);
        if (!report.overall) {
            emit(manifest, a, "validation_report.json", report.to_json_text());
            finish(manifest, a);
            std::cerr << "solve: scattering data failed validation\n";
            return 4;
        }
    }

    const auto grid = marchenko::reconstruct_grid(data, cfg, default_exec());
    emit(manifest, a, "q_grid.csv", io::grid_to_csv(grid));

    ordered_json diag;
    diag["max_condition_estimate"] = grid.max_cond;
    diag["config_hash"] = manifest.config_hash;
    diag["nystrom_order"] = cfg.nystrom.order;
    emit(manifest, a, "solve_diagnostics.json", diag.dump(2) + "\n");

    if (a.emit_kernel) {
        const marchenko::KernelField field(data);
        marchenko::SolutionGrid hk;
        hk.x_nodes = cfg.x_grid.nodes();
        hk.t_nodes = cfg.t_grid.nodes();
        hk.q.assign(hk.x_nodes.size() * hk.t_nodes.size(), 0.0);
        for (std::size_t it = 0; it < hk.t_nodes.size(); ++it)
            parallel_for(hk.x_nodes.size(), [&](std::size_t ix) {
                hk.at(ix, it) = field.eval(hk.x_nodes[ix], hk.t_nodes[it]);
            });
        std::string csv = io::grid_to_csv(hk);
        csv.replace(0, 5, "x,t,H");
        emit(manifest, a, "kernel_grid.csv", csv);
    }
    finish(manifest, a);
    return 0;
}

int cmd_verify(const CommonArgs& a) {
    const ProblemConfig cfg = load_config(a);
    auto manifest = make_manifest("verify", a);
    const ScatteringData data = ScatteringData::from_json_file(a.data_path);
    const auto grid = io::grid_from_csv(io::read_text_file(a.solution_path));

    verify::Report rep;

    // PDE residual of the supplied solution grid.
    {
        double qmax = 0.0;
        for (double v : grid.q) qmax = std::max(qmax, std::abs(v));
        const double res = verify::pde_residual(grid, cfg.lambda);
        rep.add("pde_residual", res, std::max(0.05 * qmax, 1e-4));
    }
    // Round trips against the configured data functions.
    rep.add("roundtrip_initial", verify::roundtrip_initial(data, cfg, default_exec()), 1e-4);
    {
        const auto bt = lax::boundary_triplet(cfg);
        const auto rb = verify::roundtrip_boundary(data, cfg, bt, default_exec());
        rep.add("roundtrip_boundary_v", rb.e0, 1e-3);
        rep.add("roundtrip_boundary_v1", rb.e1, 1e-3);
        rep.add("roundtrip_boundary_v2", rb.e2, 1e-3);
    }
    // Kernel collapse and reality.
    {
        const marchenko::KernelField field(data);
        double dmax = 0.0;
        for (double x = 0.0; x <= 8.0; x += 0.4)
            dmax = std::max(dmax, std::abs(field.eval(x, 0.0) - field.h0(x)));
        rep.add("kernel_collapse_t0", dmax, 1e-6);
        const auto slice =
            marchenko::KernelSlice::build(field, 0.5 * cfg.horizon(), {}, default_exec());
        rep.add("kernel_reality", slice.max_imag(), 1e-8);
    }
    // Jump residuals: x-equation RH from the reconstructed solution
    // (consistency level), t-equation RH from the boundary functions.
    {
        scat::Forward fwd(cfg);
        std::vector<CubicSpline> rows;
        for (std::size_t it = 0; it < grid.t_nodes.size(); ++it) {
            std::vector<double> ys(grid.x_nodes.size());
            for (std::size_t ix = 0; ix < grid.x_nodes.size(); ++ix) ys[ix] = grid.at(ix, it);
            rows.emplace_back(grid.x_nodes, ys);
        }
        verify::QSource src;
        src.q = [&](double x, double t) {
            // snap to the nearest time row (verification points sit on rows)
            std::size_t best = 0;
            double bd = 1e300;
            for (std::size_t it = 0; it < grid.t_nodes.size(); ++it) {
                const double d = std::abs(grid.t_nodes[it] - t);
                if (d < bd) {
                    bd = d;
                    best = it;
                }
            }
            return rows[best](x);
        };
        src.qx = [](double, double) { return 0.0; };
        src.qxx = [](double, double) { return 0.0; };

        const bool solitonless = data.eigenvalues_x.empty() && data.eigenvalues_bc.empty();
        if (solitonless) {
            double worst = 0.0, detj = 0.0;
            const std::size_t mid_t = grid.t_nodes.size() / 2;
            for (double kk : {0.7, -1.3}) {
                const auto js =
                    verify::rh_jump_residual(src, fwd, data, cplx(kk, 0.0), 1.0, grid.t_nodes[mid_t]);
                worst = std::max(worst, js.residual);
                detj = std::max(detj, js.det_J_defect);
            }
            rep.add("rh_jump_residual_reconstructed", worst, 1e-3);
            rep.add("rh_jump_detJ", detj, 1e-10);
        }
        double worst_t = 0.0, detjt = 0.0;
        for (double kk : {0.6, 1.7}) {
            const auto js = verify::t_rh_jump_residual(fwd, kk, 0.3 * cfg.horizon());
            worst_t = std::max(worst_t, js.residual);
            detjt = std::max(detjt, js.det_J_defect);
        }
        rep.add("t_rh_jump_residual", worst_t, 1e-5);
        rep.add("t_rh_detJ", detjt, 1e-10);
    }

    emit(manifest, a, "verify_report.json", rep.to_json_text());
    finish(manifest, a);
    return rep.overall ? 0 : 4;
}

int cmd_soliton(const CommonArgs& a) {
    const ProblemConfig cfg = load_config(a);
    auto manifest = make_manifest("soliton", a);
    if (cfg.u_spec.preset != "soliton_trace")
        throw ConfigError("soliton command expects a soliton_trace initial spec");
    Soliton s;
    s.kappa = cfg.u_spec.params.at("kappa");
    s.x0 = cfg.u_spec.params.count("x0") ? cfg.u_spec.params.at("x0") : 0.0;
    s.sign = cfg.u_spec.params.count("sign") ? cfg.u_spec.params.at("sign") : 1.0;

    marchenko::SolutionGrid grid;
    grid.x_nodes = cfg.x_grid.nodes();
    grid.t_nodes = cfg.t_grid.nodes();
    grid.q.resize(grid.x_nodes.size() * grid.t_nodes.size());
    for (std::size_t it = 0; it < grid.t_nodes.size(); ++it)
        for (std::size_t ix = 0; ix < grid.x_nodes.size(); ++ix)
            grid.at(ix, it) = s.q(grid.x_nodes[ix], grid.t_nodes[it]);
    emit(manifest, a, "soliton_grid.csv", io::grid_to_csv(grid));

    ordered_json bj;
    ordered_json rows = ordered_json::array();
    for (double t : grid.t_nodes) rows.push_back({t, s.q(0.0, t), s.qx(0.0, t), s.qxx(0.0, t)});
    bj["columns"] = {"t", "v", "v1", "v2"};
    bj["rows"] = rows;
    emit(manifest, a, "soliton_boundary.json", bj.dump(2) + "\n");
    finish(manifest, a);
    return 0;
}

int cmd_roundtrip(const CommonArgs& a) {
    const ProblemConfig cfg = load_config(a);
    auto manifest = make_manifest("roundtrip", a);

    scat::Forward fwd(cfg);
    const ScatteringData data = fwd.assemble();
    emit(manifest, a, "scattering_data.json", data.to_json_text());

    validate::ValidationContext ctx;
    ctx.s2_plus = [&fwd](cplx k) { return fwd.s_plus(k).second; };
    const auto vrep = validate::run_all(data, cfg, ctx);
    emit(manifest, a, "validation_report.json", vrep.to_json_text());

    const auto grid = marchenko::reconstruct_grid(data, cfg, default_exec());
    emit(manifest, a, "q_grid.csv", io::grid_to_csv(grid));

    verify::Report rep;
    rep.add("roundtrip_initial", verify::roundtrip_initial(data, cfg, default_exec()), 1e-4);
    const auto bt = lax::boundary_triplet(cfg);
    const auto rb = verify::roundtrip_boundary(data, cfg, bt, default_exec());
    rep.add("roundtrip_boundary_v", rb.e0, 1e-3);
    rep.add("roundtrip_boundary_v1", rb.e1, 1e-3);
    rep.add("roundtrip_boundary_v2", rb.e2, 1e-3);
    rep.add("pde_residual", verify::pde_residual(grid, cfg.lambda), 0.05);

    ordered_json j;
    j["validation_overall"] = vrep.overall;
    j["verify_overall"] = rep.overall;
    j["max_condition_estimate"] = grid.max_cond;
    emit(manifest, a, "roundtrip_summary.json", j.dump(2) + "\n");
    emit(manifest, a, "verify_report.json", rep.to_json_text());
    finish(manifest, a);
    return (vrep.overall && rep.overall) ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direct and inverse scattering for the half-line mKdV problem"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub, bool needs_data, bool needs_solution) {
        sub->add_option("--config", args.config_path, "problem configuration JSON")->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--threads", args.threads, "worker threads (0 = default)");
        sub->add_option("--nystrom-n", args.nystrom_n, "override Nystrom panel order");
        sub->add_flag("--skip-validate", args.skip_validate, "skip data validation");
        sub->add_flag("--emit-kernel", args.emit_kernel, "also dump the kernel H(x,t) grid");
        if (needs_data)
            sub->add_option("--data", args.data_path, "scattering data JSON")->required();
        if (needs_solution)
            sub->add_option("--solution", args.solution_path, "solution CSV")->required();
    };

    auto* forward = app.add_subcommand("forward", "compute scattering data from the data functions");
    add_common(forward, false, false);
    auto* validate_cmd = app.add_subcommand("validate", "check scattering data against conditions A-B-C");
    add_common(validate_cmd, true, false);
    auto* solve = app.add_subcommand("solve", "reconstruct q(x,t) from scattering data");
    add_common(solve, true, false);
    auto* verify_cmd = app.add_subcommand("verify", "run verification oracles on a solution");
    add_common(verify_cmd, true, true);
    auto* soliton = app.add_subcommand("soliton", "emit the exact soliton grid");
    add_common(soliton, false, false);
    auto* roundtrip = app.add_subcommand("roundtrip", "forward + validate + solve + verify");
    add_common(roundtrip, false, false);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_threads(args);
        fs::create_directories(args.out_dir);
        if (forward->parsed()) return cmd_forward(args);
        if (validate_cmd->parsed()) return cmd_validate(args);
        if (solve->parsed()) return cmd_solve(args);
        if (verify_cmd->parsed()) return cmd_verify(args);
        if (soliton->parsed()) return cmd_soliton(args);
        if (roundtrip->parsed()) return cmd_roundtrip(args);
    } catch (const RealZeroOfS2& e) {
        std::cerr << "class violation: " << e.what() << "\n";
        return 2;
    } catch (const MultipleZeroSuspected& e) {
        std::cerr << "class violation: " << e.what() << "\n";
        return 2;
    } catch (const BoundaryZero& e) {
        std::cerr << "class violation: " << e.what() << "\n";
        return 2;
    } catch (const SingularSystem& e) {
        std::cerr << "singular system: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

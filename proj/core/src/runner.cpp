#include "inspde/runner.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>

#include "inspde/errors.hpp"
#include "inspde/report.hpp"
#include "inspde/solver.hpp"

namespace inspde {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

int do_validate(const ConfigResult& result, std::ostream& out, std::ostream& err) {
    if (result.config) {
        out << "config ok (hash " << result.config->hash << ")\n";
        return exit_ok;
    }
    err << "config invalid:\n";
    for (const auto& e : result.errors) err << "  - " << e << "\n";
    return exit_config;
}

int do_simulate(const RunConfig& rc, std::ostream& out) {
    Trajectory traj = [&rc] {
        if (rc.model.coeffs.b_map) {
            std::vector<double> grid(static_cast<std::size_t>(
                                         std::llround(rc.model.T / rc.solver.dt)) + 1);
            for (std::size_t i = 0; i < grid.size(); ++i)
                grid[i] = static_cast<double>(i) * rc.solver.dt;
            grid.back() = rc.model.T;
            const WienerIncrements w = sample_increments(rc.noise, grid, 0);
            return solve_mild(rc.model, rc.model.space, w, rc.solver);
        }
        return solve_deterministic(rc.model, rc.model.space, rc.solver);
    }();
    const std::string path = join_path(rc.out_dir, "trajectory.csv");
    write_guarded(path, trajectory_csv(traj, rc.hash), rc.hash, rc.force);
    out << "wrote " << path << "\n";
    return exit_ok;
}

void emit_report(ExperimentReport report, const RunConfig& rc, const std::string& stem,
                 std::ostream& out) {
    report.meta.config_hash = rc.hash;
    write_guarded(join_path(rc.out_dir, stem + ".csv"), report_csv(report), rc.hash, rc.force);
    write_guarded(join_path(rc.out_dir, stem + ".json"), report_json(report), rc.hash, rc.force);
    write_guarded(join_path(rc.out_dir, stem + ".dat"), report_plot(report), rc.hash, rc.force);
    out << "wrote " << join_path(rc.out_dir, stem + ".{csv,json,dat}") << "\n";
    for (const auto& row : report.rows) {
        out << "  " << report.meta.index_kind << " = " << format_double(row.index_value);
        if (row.failed)
            out << "  FAILED: " << row.message << "\n";
        else
            out << "  error = " << format_double(row.estimate.value)
                << "  stderr = " << format_double(row.estimate.stderr_) << "\n";
    }
}

int do_tk(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    if (rc.family_indices.empty()) {
        err << "family.indices is empty; nothing to run\n";
        return exit_config;
    }
    const GeneratorFamily fam = rc.make_family();
    ExperimentReport report =
        trotter_kato_experiment(rc.model, fam, rc.family_indices, rc.experiment_config());
    emit_report(std::move(report), rc, "tk_report", out);

    // Operator-level decay table along the model's own initial direction.
    HVector v = rc.model.initial_path(0.0);
    const double n = v.norm();
    if (n > 0.0) v = (1.0 / n) * v;
    else v[0] = 1.0;
    std::vector<double> coarse(11);
    for (int i = 0; i <= 10; ++i) coarse[static_cast<std::size_t>(i)] = rc.model.T * i / 10.0;
    const std::string path = join_path(rc.out_dir, "gap_table.csv");
    write_guarded(path, gap_table_csv(fam, rc.family_indices, 1.0, coarse, v, rc.hash),
                  rc.hash, rc.force);
    out << "wrote " << path << "\n";
    return exit_ok;
}

int do_zeroth(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    if (rc.eps_grid.empty()) {
        err << "family.epsilons is empty; nothing to run\n";
        return exit_config;
    }
    std::optional<GeneratorFamily> shifted;
    if (rc.shift_scale > 0.0)
        shifted = GeneratorFamily::shifted(rc.model.space, rc.shift_scale);
    ExperimentReport report =
        zeroth_order_experiment(rc.model, shifted, rc.eps_grid, rc.experiment_config());
    emit_report(std::move(report), rc, "zeroth_report", out);
    return exit_ok;
}

int do_param(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    if (rc.theta_grid.empty()) {
        err << "param.thetas is empty; nothing to run\n";
        return exit_config;
    }
    ExperimentReport report = parameter_family_experiment(
        rc.model, rc.make_theta_family(), rc.theta_grid, rc.theta0, rc.experiment_config());
    emit_report(std::move(report), rc, "param_report", out);
    return exit_ok;
}

int do_probe(const RunConfig& rc, std::ostream& out) {
    const ProbeReport report =
        lipschitz_probe(rc.model, rc.noise, rc.solver.dt, 10000, rc.noise.seed);
    const std::string path = join_path(rc.out_dir, "probe_report.json");
    write_guarded(path, probe_json(report, rc.hash), rc.hash, rc.force);
    out << "wrote " << path << "\n";
    for (const auto& e : report.entries)
        out << "  " << e.name << ": max ratio " << format_double(e.max_ratio) << " vs declared "
            << format_double(e.declared) << (e.violated ? "  VIOLATED" : "") << "\n";
    // A violated declared constant is a model/config problem, not a solver one.
    return report.any_violation ? exit_config : exit_ok;
}

} // namespace

int run_subcommand(const std::string& subcommand, const std::string& config_path,
                   const CliOverrides& overrides, std::ostream& out, std::ostream& err) {
    const ConfigResult result = load_config(config_path, overrides);
    if (subcommand == "validate") return do_validate(result, out, err);
    if (!result.config) {
        err << "config invalid:\n";
        for (const auto& e : result.errors) err << "  - " << e << "\n";
        return exit_config;
    }
    const RunConfig& rc = *result.config;
    try {
        if (subcommand == "simulate") return do_simulate(rc, out);
        if (subcommand == "tk") return do_tk(rc, out, err);
        if (subcommand == "zeroth") return do_zeroth(rc, out, err);
        if (subcommand == "param") return do_param(rc, out, err);
        if (subcommand == "probe") return do_probe(rc, out);
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        err << "solver error: " << e.what() << "\n";
        return exit_solver;
    }
    err << "unknown subcommand: " << subcommand << "\n";
    return exit_config;
}

} // namespace inspde

#include "inspde/experiments.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "inspde/errors.hpp"
#include "inspde/parallel.hpp"

namespace inspde {

namespace {

std::vector<double> uniform_grid(double T, double dt) {
    const int n = static_cast<int>(std::round(T / dt));
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) * dt;
    g.back() = T;
    return g;
}

std::vector<WienerIncrements> draw_paths(const ExperimentConfig& cfg, double T) {
    const auto grid = uniform_grid(T, cfg.solver.dt);
    std::vector<WienerIncrements> out(static_cast<std::size_t>(cfg.paths));
    parallel_for(out.size(), cfg.workers, [&](std::size_t p) {
        out[p] = sample_increments(cfg.noise, grid, p);
    });
    return out;
}

ReportMeta make_meta(const ModelSpec& spec, const ExperimentConfig& cfg, std::string index_kind) {
    ReportMeta m;
    m.index_kind = std::move(index_kind);
    m.model_label = spec.space.label();
    m.seed = cfg.noise.seed;
    m.dt = cfg.solver.dt;
    m.space_dim = spec.space.dim();
    m.noise_dim = cfg.noise.dim();
    m.p = spec.p;
    m.T = spec.T;
    m.paths = cfg.paths;
    return m;
}

/// Mean over the first `count` paths is evaluated per time slot in path
/// order, so the estimate is independent of how the paths were scheduled.
struct SupErrorAccumulator {
    explicit SupErrorAccumulator(std::size_t paths) : rows(paths) {}

    std::vector<std::vector<double>> rows; // per path: |diff(t)|^p on [0, T]

    ErrorEstimate reduce(std::size_t count, double t0_index_time, double dt) const {
        const std::size_t n_times = rows.front().size();
        std::vector<double> mean(n_times, 0.0);
        for (std::size_t p = 0; p < count; ++p)
            for (std::size_t i = 0; i < n_times; ++i) mean[i] += rows[p][i];
        std::size_t argmax = 0;
        for (std::size_t i = 0; i < n_times; ++i) {
            mean[i] /= static_cast<double>(count);
            if (mean[i] > mean[argmax]) argmax = i;
        }
        double ss = 0.0;
        for (std::size_t p = 0; p < count; ++p) {
            const double d = rows[p][argmax] - mean[argmax];
            ss += d * d;
        }
        ErrorEstimate e;
        e.value = mean[argmax];
        e.paths = static_cast<int>(count);
        e.argmax_t = t0_index_time + static_cast<double>(argmax) * dt;
        e.stderr_ = count > 1 ? std::sqrt(ss / (static_cast<double>(count) - 1.0) /
                                          static_cast<double>(count))
                              : 0.0;
        return e;
    }
};

std::vector<double> pth_row(const Trajectory& a, const Trajectory& b, double p) {
    const int start = a.history_steps();
    std::vector<double> row(static_cast<std::size_t>(a.forward_steps()) + 1);
    for (int i = start; i < a.size(); ++i)
        row[static_cast<std::size_t>(i - start)] =
            std::pow(distance(a.at_index(i), b.at_index(i)), p);
    return row;
}

} // namespace

ErrorEstimate pth_mean_sup_error(const std::vector<Trajectory>& paths_a,
                                 const std::vector<Trajectory>& paths_b, double p) {
    if (paths_a.empty() || paths_a.size() != paths_b.size())
        throw ContractViolation("pth_mean_sup_error: path lists must be nonempty and equal-sized");
    if (!(p >= 2.0))
        throw ContractViolation("pth_mean_sup_error: p must be >= 2");
    for (std::size_t i = 0; i < paths_a.size(); ++i)
        if (!paths_a[i].same_grid_as(paths_b[i]) || !paths_a[i].same_grid_as(paths_a[0]))
            throw ContractViolation("pth_mean_sup_error: grid mismatch across paths");

    SupErrorAccumulator acc(paths_a.size());
    for (std::size_t i = 0; i < paths_a.size(); ++i)
        acc.rows[i] = pth_row(paths_a[i], paths_b[i], p);
    return acc.reduce(paths_a.size(), 0.0, paths_a[0].dt());
}

ExperimentReport trotter_kato_experiment(const ModelSpec& spec, const GeneratorFamily& fam,
                                         std::span<const double> n_grid,
                                         const ExperimentConfig& cfg) {
    if (n_grid.empty())
        throw ContractViolation("trotter_kato_experiment: empty index grid");
    const GateReport base_gate = wellposedness_check(spec);
    if (!base_gate.pass)
        throw ContractViolation("trotter_kato_experiment: base model fails the well-posedness gate (value " +
                                std::to_string(base_gate.value) + ")");

    ExperimentReport report;
    report.meta = make_meta(spec, cfg, "n");

    const auto noise_paths = draw_paths(cfg, spec.T);
    std::vector<Trajectory> base(static_cast<std::size_t>(cfg.paths),
                                 Trajectory(cfg.solver.dt, 0, 1, 1));
    parallel_for(base.size(), cfg.workers, [&](std::size_t p) {
        base[p] = solve_mild(spec, spec.space, noise_paths[p], cfg.solver);
    });

    for (double n : n_grid) {
        ExperimentRow row;
        row.index_value = n;
        try {
            const SpectralModel member = fam.member(n);
            const GateReport gate = wellposedness_check(spec, member);
            if (!gate.pass)
                throw ContractViolation("member fails the well-posedness gate (value " +
                                        std::to_string(gate.value) + ")");
            SupErrorAccumulator acc(static_cast<std::size_t>(cfg.paths));
            parallel_for(acc.rows.size(), cfg.workers, [&](std::size_t p) {
                const Trajectory xn = solve_mild(spec, member, noise_paths[p], cfg.solver);
                acc.rows[p] = pth_row(xn, base[p], spec.p);
            });
            row.estimate = acc.reduce(acc.rows.size(), 0.0, cfg.solver.dt);
        } catch (const std::exception& e) {
            row.failed = true;
            row.message = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

ModelSpec scale_diffusion(const ModelSpec& spec, double eps) {
    ModelSpec out = spec;
    if (spec.coeffs.b_map) {
        const DiffusionFn inner = spec.coeffs.b_map;
        out.coeffs.b_map = [inner, eps](double t, const Segment& seg) {
            DiffusionValue v = inner(t, seg);
            for (double& x : v.m) x *= eps;
            return v;
        };
    }
    return out;
}

} // namespace

ExperimentReport zeroth_order_experiment(const ModelSpec& spec,
                                         const std::optional<GeneratorFamily>& shifted,
                                         std::span<const double> eps_grid,
                                         const ExperimentConfig& cfg) {
    if (eps_grid.empty())
        throw ContractViolation("zeroth_order_experiment: empty eps grid");
    const GateReport base_gate = wellposedness_check(spec);
    if (!base_gate.pass)
        throw ContractViolation("zeroth_order_experiment: base model fails the well-posedness gate (value " +
                                std::to_string(base_gate.value) + ")");

    ExperimentReport report;
    report.meta = make_meta(spec, cfg, "eps");

    const auto noise_paths = draw_paths(cfg, spec.T);
    const Trajectory reference = solve_deterministic(spec, spec.space, cfg.solver);

    for (double eps : eps_grid) {
        ExperimentRow row;
        row.index_value = eps;
        try {
            if (!(eps >= 0.0)) throw ContractViolation("eps must be nonnegative");
            const SpectralModel gen = (shifted && eps > 0.0) ? shifted->member(eps) : spec.space;
            const GateReport gate = wellposedness_check(spec, gen);
            if (!gate.pass)
                throw ContractViolation("member fails the well-posedness gate (value " +
                                        std::to_string(gate.value) + ")");
            const ModelSpec eps_spec = scale_diffusion(spec, eps);
            SupErrorAccumulator acc(static_cast<std::size_t>(cfg.paths));
            parallel_for(acc.rows.size(), cfg.workers, [&](std::size_t p) {
                const Trajectory xe = solve_mild(eps_spec, gen, noise_paths[p], cfg.solver);
                acc.rows[p] = pth_row(xe, reference, spec.p);
            });
            row.estimate = acc.reduce(acc.rows.size(), 0.0, cfg.solver.dt);
        } catch (const std::exception& e) {
            row.failed = true;
            row.message = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

ExperimentReport parameter_family_experiment(const ModelSpec& base_spec, const ThetaFamily& family,
                                             std::span<const double> theta_grid, double theta0,
                                             const ExperimentConfig& cfg) {
    if (theta_grid.empty())
        throw ContractViolation("parameter_family_experiment: empty theta grid");
    if (!family)
        throw ContractViolation("parameter_family_experiment: family callback required");

    ExperimentReport report;
    report.meta = make_meta(base_spec, cfg, "theta");

    auto member_spec = [&base_spec, &family](double theta) {
        ThetaMember m = family(theta);
        ModelSpec spec = base_spec;
        spec.coeffs = std::move(m.coeffs);
        spec.impulses = std::move(m.impulses);
        return std::pair<ModelSpec, SpectralModel>(std::move(spec), std::move(m.generator));
    };

    const auto [spec0, gen0] = member_spec(theta0);
    const GateReport gate0 = wellposedness_check(spec0, gen0);
    if (!gate0.pass)
        throw ContractViolation("parameter_family_experiment: theta0 member fails the gate (value " +
                                std::to_string(gate0.value) + ")");

    const auto noise_paths = draw_paths(cfg, base_spec.T);
    std::vector<Trajectory> ref(static_cast<std::size_t>(cfg.paths),
                                Trajectory(cfg.solver.dt, 0, 1, 1));
    parallel_for(ref.size(), cfg.workers, [&](std::size_t p) {
        ref[p] = solve_mild(spec0, gen0, noise_paths[p], cfg.solver);
    });

    for (double theta : theta_grid) {
        ExperimentRow row;
        row.index_value = theta;
        try {
            const auto [spec_t, gen_t] = member_spec(theta);
            const GateReport gate = wellposedness_check(spec_t, gen_t);
            if (!gate.pass)
                throw ContractViolation("member fails the well-posedness gate (value " +
                                        std::to_string(gate.value) + ")");
            SupErrorAccumulator acc(static_cast<std::size_t>(cfg.paths));
            parallel_for(acc.rows.size(), cfg.workers, [&](std::size_t p) {
                const Trajectory xt = solve_mild(spec_t, gen_t, noise_paths[p], cfg.solver);
                acc.rows[p] = pth_row(xt, ref[p], spec_t.p);
            });
            row.estimate = acc.reduce(acc.rows.size(), 0.0, cfg.solver.dt);
        } catch (const std::exception& e) {
            row.failed = true;
            row.message = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

AprioriReport apriori_bound_check(const ModelSpec& spec, const SpectralModel& generator,
                                  const ExperimentConfig& cfg) {
    const GateReport gate = wellposedness_check(spec, generator);
    if (!gate.pass)
        throw ContractViolation("apriori_bound_check: well-posedness gate fails (value " +
                                std::to_string(gate.value) + ")");
    if (cfg.paths < 2)
        throw ContractViolation("apriori_bound_check: needs at least two paths");

    const auto noise_paths = draw_paths(cfg, spec.T);
    SupErrorAccumulator acc(static_cast<std::size_t>(cfg.paths));
    parallel_for(acc.rows.size(), cfg.workers, [&](std::size_t p) {
        const Trajectory x = solve_mild(spec, generator, noise_paths[p], cfg.solver);
        const int start = x.history_steps();
        std::vector<double> row(static_cast<std::size_t>(x.forward_steps()) + 1);
        for (int i = start; i < x.size(); ++i)
            row[static_cast<std::size_t>(i - start)] =
                std::pow(x.at_index(i).norm(), spec.p);
        acc.rows[p] = std::move(row);
    });

    const ErrorEstimate full = acc.reduce(acc.rows.size(), 0.0, cfg.solver.dt);
    const ErrorEstimate half = acc.reduce(acc.rows.size() / 2, 0.0, cfg.solver.dt);

    AprioriReport rep;
    rep.bound = full.value;
    rep.bound_half = half.value;
    rep.argmax_t = full.argmax_t;
    rep.paths = cfg.paths;
    rep.rel_change = std::abs(full.value - half.value) /
                     std::max(full.value, std::numeric_limits<double>::min());
    rep.stable = rep.rel_change < 0.10;
    return rep;
}

} // namespace inspde

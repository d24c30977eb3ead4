#include "inspde/solver.hpp"

#include <cmath>
#include <string>

#include "inspde/errors.hpp"

namespace inspde {

namespace {

int aligned_steps(double span, double dt, const char* what) {
    const double f = span / dt;
    const double r = std::round(f);
    if (std::abs(f - r) > 1e-9 * std::max(1.0, std::abs(f)))
        throw ContractViolation(std::string(what) + " is not an integer multiple of dt");
    return static_cast<int>(r);
}

} // namespace

HVector neutral_picard(double target_time, const HVector& explicit_sum, Segment window,
                       const ModelSpec& spec, const SolverConfig& cfg, int* iterations) {
    HVector y = explicit_sum;
    if (!spec.coeffs.f_map) {
        if (iterations) *iterations = 0;
        return y;
    }
    for (int it = 1; it <= cfg.picard_max_iter; ++it) {
        window.set_endpoint(y);
        HVector next = explicit_sum - spec.coeffs.f_map(target_time, window);
        const double delta = distance(next, y);
        y = std::move(next);
        if (delta <= cfg.picard_tol) {
            if (iterations) *iterations = it;
            return y;
        }
    }
    throw SolverDivergence("neutral_picard: no contraction within " +
                           std::to_string(cfg.picard_max_iter) + " iterations at t = " +
                           std::to_string(target_time));
}

namespace {

Trajectory run_solver(const ModelSpec& spec, const SpectralModel& generator,
                      const WienerIncrements* noise, const SolverConfig& cfg) {
    if (generator.dim() != spec.space.dim())
        throw ContractViolation("solve: generator dimension does not match model space");
    if (!(cfg.dt > 0.0))
        throw ContractViolation("solve: dt must be positive");
    spec.impulses.validate(spec.T);

    const int n_hist = aligned_steps(spec.delay_r, cfg.dt, "delay r");
    const int n_steps = aligned_steps(spec.T, cfg.dt, "horizon T");
    if (noise) {
        if (noise->steps() != static_cast<std::size_t>(n_steps) ||
            noise->q_eigs.size() != static_cast<std::size_t>(noise->noise_dim))
            throw ContractViolation("solve: noise table does not match the solver grid");
        for (std::size_t i = 0; i < noise->grid.size(); ++i) {
            if (std::abs(noise->grid[i] - static_cast<double>(i) * cfg.dt) > 1e-9)
                throw ContractViolation("solve: noise grid does not match the solver grid");
        }
    }

    Trajectory traj(cfg.dt, n_hist, n_steps, spec.space.dim());

    // Initial path on [-r, 0].
    for (int i = 0; i <= n_hist; ++i) {
        const double t = traj.time_of(i);
        HVector v = spec.initial_path ? spec.initial_path(t)
                                      : HVector(static_cast<std::size_t>(spec.space.dim()));
        spec.space.require_conforming(v);
        if (!v.all_finite())
            throw InstabilityError("initial path is non-finite at t = " + std::to_string(t));
        traj.at_index(i) = std::move(v);
    }

    std::vector<int> impulse_step(spec.impulses.count());
    for (std::size_t k = 0; k < spec.impulses.count(); ++k)
        impulse_step[k] = aligned_steps(spec.impulses.times[k], cfg.dt, "impulse time");

    // Per-mode step weights: exp_dt = e^{-mu dt}, drift_w = int_0^dt e^{-mu u} du,
    // sqrt_q = sqrt(lambda_j).
    const auto& mu = generator.eigenvalues();
    const int dim = generator.dim();
    const int jdim = noise ? noise->noise_dim : 0;
    std::vector<double> exp_dt(static_cast<std::size_t>(dim));
    std::vector<double> drift_w(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) {
        exp_dt[static_cast<std::size_t>(k)] = std::exp(-mu[static_cast<std::size_t>(k)] * cfg.dt);
        drift_w[static_cast<std::size_t>(k)] =
            semigroup_integral_weight(mu[static_cast<std::size_t>(k)], cfg.dt);
    }
    std::vector<double> sqrt_q(static_cast<std::size_t>(jdim));
    for (int j = 0; j < jdim; ++j)
        sqrt_q[static_cast<std::size_t>(j)] = std::sqrt(noise->q_eigs[static_cast<std::size_t>(j)]);

    // Current propagated state; equals the stored grid value except right
    // after a jump, where it is the right limit while the grid keeps the
    // left limit.
    HVector state = traj.at_index(n_hist);
    std::size_t next_impulse = 0;
    std::vector<double> weighted_dw(static_cast<std::size_t>(jdim));

    for (int i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * cfg.dt;
        const double t_next = static_cast<double>(i + 1) * cfg.dt;
        const Segment seg = segment_view(traj, t, spec.delay_r);

        HVector g(static_cast<std::size_t>(dim));
        for (int k = 0; k < dim; ++k)
            g[static_cast<std::size_t>(k)] =
                exp_dt[static_cast<std::size_t>(k)] * state[static_cast<std::size_t>(k)];

        if (spec.coeffs.f_map) {
            const HVector f_t = spec.coeffs.f_map(t, seg);
            for (int k = 0; k < dim; ++k)
                g[static_cast<std::size_t>(k)] += f_t[static_cast<std::size_t>(k)];
        }
        if (spec.coeffs.a_map) {
            const HVector a_t = spec.coeffs.a_map(t, seg);
            for (int k = 0; k < dim; ++k)
                g[static_cast<std::size_t>(k)] +=
                    drift_w[static_cast<std::size_t>(k)] * a_t[static_cast<std::size_t>(k)];
        }
        if (noise && spec.coeffs.b_map) {
            const DiffusionValue b_t = spec.coeffs.b_map(t, seg);
            if (b_t.rows != dim || b_t.cols != jdim)
                throw ContractViolation("solve: diffusion value has wrong shape");
            const auto dw = noise->row(static_cast<std::size_t>(i));
            for (int j = 0; j < jdim; ++j)
                weighted_dw[static_cast<std::size_t>(j)] =
                    sqrt_q[static_cast<std::size_t>(j)] * dw[static_cast<std::size_t>(j)];
            for (int k = 0; k < dim; ++k) {
                double acc = 0.0;
                for (int j = 0; j < jdim; ++j)
                    acc += b_t.at(k, j) * weighted_dw[static_cast<std::size_t>(j)];
                g[static_cast<std::size_t>(k)] += exp_dt[static_cast<std::size_t>(k)] * acc;
            }
        }

        // Window at t_next whose endpoint is the Picard unknown.
        Segment next_window = [&] {
            std::vector<HVector> window;
            const int steps = seg.steps();
            window.reserve(static_cast<std::size_t>(steps) + 1);
            const int end = n_hist + i + 1;
            for (int j = end - steps; j < end; ++j) window.push_back(traj.at_index(j));
            window.push_back(g); // placeholder endpoint
            return Segment(cfg.dt, std::move(window));
        }();

        HVector y = neutral_picard(t_next, g, std::move(next_window), spec, cfg);
        if (!y.all_finite())
            throw InstabilityError("non-finite state at step " + std::to_string(i + 1) +
                                   " (t = " + std::to_string(t_next) + ")");

        traj.at_index(n_hist + i + 1) = y;
        state = std::move(y);

        if (next_impulse < impulse_step.size() && impulse_step[next_impulse] == i + 1) {
            const HVector& left = traj.at_index(n_hist + i + 1);
            const HVector jump = spec.impulses.maps[next_impulse](left);
            HVector right = left + jump;
            if (!right.all_finite())
                throw InstabilityError("non-finite post-jump state at t = " +
                                       std::to_string(t_next));
            traj.set_post_jump(n_hist + i + 1, right);
            state = std::move(right);
            ++next_impulse;
        }
    }

    return traj;
}

} // namespace

Trajectory solve_mild(const ModelSpec& spec, const SpectralModel& generator,
                      const WienerIncrements& noise, const SolverConfig& cfg) {
    return run_solver(spec, generator, &noise, cfg);
}

Trajectory solve_deterministic(const ModelSpec& spec, const SpectralModel& generator,
                               const SolverConfig& cfg) {
    return run_solver(spec, generator, nullptr, cfg);
}

} // namespace inspde

#pragma once

#include "inspde/model.hpp"
#include "inspde/stochastics.hpp"
#include "inspde/trajectory.hpp"

namespace inspde {

struct SolverConfig {
    double dt = 1e-3;          // must divide T, r and every impulse time
    double picard_tol = 1e-10;
    int picard_max_iter = 50;
};

/// Fixed point of y = explicit_sum - f(target_time, window-with-endpoint-y).
/// The window's endpoint slot is the unknown; iteration starts from
/// explicit_sum and contracts with ratio <= C4 * mu_min^{-alpha}. Writes
/// the iteration count to *iterations when given.
HVector neutral_picard(double target_time, const HVector& explicit_sum, Segment window,
                       const ModelSpec& spec, const SolverConfig& cfg,
                       int* iterations = nullptr);

/// Discrete mild solution of the impulsive neutral equation driven by the
/// given generator (base model or a family member) and Brownian increments.
/// One step advances
///
///   x(t+dt) = S(dt) x(t) + f(t, pi_t x) - f(t+dt, pi_{t+dt} x)
///           + D(dt) a(t, pi_t x) + S(dt) b(t, pi_t x) dw_t,
///
/// where D(dt) = int_0^dt S(u) du and the f-difference is the exact value of
/// the bracket S(dt) f - f(t+dt, .) minus the -int A S f ds term when f is
/// held constant over the step (the integral telescopes to S(dt) f - f, so
/// the singular kernel never gets quadratured). The implicit endpoint inside
/// f(t+dt, .) is resolved by neutral_picard. At each impulse time the jump
/// x(t_k^+) = x(t_k^-) + I_k(x(t_k^-)) is applied and stepping resumes from
/// the right limit; the grid keeps the left limit.
Trajectory solve_mild(const ModelSpec& spec, const SpectralModel& generator,
                      const WienerIncrements& noise, const SolverConfig& cfg);

/// Same stepping with b = 0 and no noise consumed.
Trajectory solve_deterministic(const ModelSpec& spec, const SpectralModel& generator,
                               const SolverConfig& cfg);

} // namespace inspde

#include "inspde/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "inspde/errors.hpp"
#include "inspde/rng.hpp"

namespace inspde {

Segment::Segment(double dt, std::vector<HVector> window)
    : dt_(dt), window_(std::move(window)) {
    if (!(dt > 0.0) || window_.empty())
        throw ContractViolation("Segment: needs dt > 0 and a nonempty window");
}

const HVector& Segment::at_lag(double lag) const {
    const double pos = lag / dt_;
    const double r = std::round(pos);
    if (std::abs(pos - r) > 1e-9 * std::max(1.0, std::abs(pos)))
        throw ContractViolation("Segment::at_lag: lag is not grid-aligned");
    const int back = static_cast<int>(r);
    if (back < 0 || back > steps())
        throw ContractViolation("Segment::at_lag: lag outside the delay window");
    return window_[static_cast<std::size_t>(steps() - back)];
}

double Segment::sup_distance(const Segment& a, const Segment& b) {
    if (a.steps() != b.steps())
        throw ContractViolation("Segment::sup_distance: window shapes differ");
    double worst = 0.0;
    for (int j = 0; j <= a.steps(); ++j)
        worst = std::max(worst, distance(a.at_offset(j), b.at_offset(j)));
    return worst;
}

double ImpulseSchedule::sum_hk() const {
    double s = 0.0;
    for (double h : h_k) s += h;
    return s;
}

void ImpulseSchedule::validate(double T) const {
    if (times.size() != maps.size() || times.size() != h_k.size())
        throw ContractViolation("ImpulseSchedule: times, maps and h_k must align");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] > 0.0 && times[k] < T))
            throw ContractViolation("ImpulseSchedule: impulse times must lie strictly inside (0, T)");
        if (k > 0 && !(times[k] > times[k - 1]))
            throw ContractViolation("ImpulseSchedule: impulse times must be strictly increasing");
        if (!(h_k[k] > 0.0))
            throw ContractViolation("ImpulseSchedule: h_k must be positive");
    }
    if (h0 < 0.0)
        throw ContractViolation("ImpulseSchedule: h_0 must be nonnegative");
}

Segment segment_view(const Trajectory& traj, double t, double r) {
    if (r < 0.0)
        throw ContractViolation("segment_view: delay must be nonnegative");
    const int end = traj.index_of(t);
    const double steps_f = r / traj.dt();
    const double steps_r = std::round(steps_f);
    if (std::abs(steps_f - steps_r) > 1e-9 * std::max(1.0, steps_f))
        throw ContractViolation("segment_view: delay is not grid-aligned");
    const int steps = static_cast<int>(steps_r);
    if (end - steps < 0)
        throw ContractViolation("segment_view: window reaches before stored history");
    std::vector<HVector> window;
    window.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = end - steps; i <= end; ++i) window.push_back(traj.at_index(i));
    return Segment(traj.dt(), std::move(window));
}

namespace {

GateReport gate_for(const ModelSpec& spec, double mu_min, double M, double delta) {
    const double L = std::max(spec.coeffs.C4, spec.coeffs.C5);
    double frac_term = 0.0;
    if (L > 0.0) {
        if (!(mu_min > 0.0)) {
            GateReport r;
            r.pass = false;
            r.value = std::numeric_limits<double>::infinity();
            r.detail = "||(-A)^{-alpha}|| is unbounded (mu_min = 0) with a nonzero neutral constant";
            return r;
        }
        frac_term = L * std::pow(mu_min, -spec.coeffs.alpha);
    }
    GateReport r;
    r.value = frac_term + M * std::exp(delta * spec.T) * spec.impulses.sum_hk();
    r.pass = r.value < 1.0;
    if (!r.pass)
        r.detail = "L*||A^-alpha|| + M e^{dT} sum(h_k) reached " + std::to_string(r.value);
    return r;
}

} // namespace

GateReport wellposedness_check(const ModelSpec& spec, double M, double delta) {
    return gate_for(spec, spec.space.mu_min(), M, delta);
}

GateReport wellposedness_check(const ModelSpec& spec, const SpectralModel& generator,
                               double M, double delta) {
    return gate_for(spec, generator.mu_min(), M, delta);
}

namespace {

// Probe segments mix magnitudes so growth violations at large states are
// caught, not just local slopes.
HVector probe_vector(int dim, std::uint64_t seed, std::uint64_t sample, std::uint64_t slot) {
    HVector v(static_cast<std::size_t>(dim));
    const double scale = std::pow(4.0, static_cast<double>(sample % 5) - 2.0); // 1/16 .. 16
    for (int k = 0; k < dim; ++k)
        v[static_cast<std::size_t>(k)] =
            scale * rng::standard_normal(seed, sample, slot, static_cast<std::uint64_t>(k));
    return v;
}

Segment probe_segment(int dim, int steps, double dt, std::uint64_t seed,
                      std::uint64_t sample, std::uint64_t side) {
    std::vector<HVector> window;
    window.reserve(static_cast<std::size_t>(steps) + 1);
    for (int j = 0; j <= steps; ++j)
        window.push_back(probe_vector(dim, seed, sample,
                                      side * 1000003ULL + static_cast<std::uint64_t>(j)));
    return Segment(dt, std::move(window));
}

} // namespace

ProbeReport lipschitz_probe(const ModelSpec& spec, const NoiseSpec& noise, double dt,
                            int n_samples, std::uint64_t seed) {
    if (n_samples < 1)
        throw ContractViolation("lipschitz_probe: n_samples must be >= 1");
    const int dim = spec.space.dim();
    const double steps_f = spec.delay_r / dt;
    const int steps = static_cast<int>(std::round(steps_f));

    ProbeReport rep;
    rep.samples = n_samples;
    rep.seed = seed;

    double ratio_a = 0.0, ratio_b = 0.0, ratio_f = 0.0;
    std::vector<double> ratio_ik(spec.impulses.count(), 0.0);

    for (int s = 0; s < n_samples; ++s) {
        const auto sample = static_cast<std::uint64_t>(s);
        const Segment sx = probe_segment(dim, steps, dt, seed, sample, 1);
        const Segment sy = probe_segment(dim, steps, dt, seed, sample, 2);
        const double den = Segment::sup_distance(sx, sy);
        if (den == 0.0) continue;
        const double t = 0.5; // coefficients are time-autonomous in builtin forms
        if (spec.coeffs.a_map) {
            const double d = distance(spec.coeffs.a_map(t, sx), spec.coeffs.a_map(t, sy));
            ratio_a = std::max(ratio_a, std::pow(d / den, spec.p));
        }
        if (spec.coeffs.b_map) {
            DiffusionValue bx = spec.coeffs.b_map(t, sx);
            const DiffusionValue by = spec.coeffs.b_map(t, sy);
            for (std::size_t i = 0; i < bx.m.size(); ++i) bx.m[i] -= by.m[i];
            const double d = lambda_hs_norm(bx, noise);
            ratio_b = std::max(ratio_b, std::pow(d / den, spec.p));
        }
        if (spec.coeffs.f_map) {
            const HVector gx = fractional_apply(spec.space, spec.coeffs.alpha, 1,
                                                spec.coeffs.f_map(t, sx));
            const HVector gy = fractional_apply(spec.space, spec.coeffs.alpha, 1,
                                                spec.coeffs.f_map(t, sy));
            ratio_f = std::max(ratio_f, distance(gx, gy) / den);
        }
        for (std::size_t k = 0; k < spec.impulses.count(); ++k) {
            const HVector x = probe_vector(dim, seed, sample, 3);
            const HVector y = probe_vector(dim, seed, sample, 4);
            const double dxy = distance(x, y);
            if (dxy == 0.0) continue;
            const double d = distance(spec.impulses.maps[k](x), spec.impulses.maps[k](y));
            ratio_ik[k] = std::max(ratio_ik[k], d / dxy);
        }
    }

    const double slack = 1.0 + 1e-12;
    auto push = [&rep, slack](std::string name, double ratio, double declared) {
        ProbeEntry e;
        e.name = std::move(name);
        e.max_ratio = ratio;
        e.declared = declared;
        e.violated = ratio > declared * slack;
        rep.any_violation = rep.any_violation || e.violated;
        rep.entries.push_back(std::move(e));
    };
    if (spec.coeffs.a_map) push("a vs C1 (pth power)", ratio_a, spec.coeffs.C1);
    if (spec.coeffs.b_map) push("b vs C2 (pth power, lambda-HS)", ratio_b, spec.coeffs.C2);
    if (spec.coeffs.f_map) push("(-A)^alpha f vs C4", ratio_f, spec.coeffs.C4);
    for (std::size_t k = 0; k < spec.impulses.count(); ++k)
        push("I_" + std::to_string(k + 1) + " vs h_" + std::to_string(k + 1),
             ratio_ik[k], spec.impulses.h_k[k]);
    return rep;
}

} // namespace inspde

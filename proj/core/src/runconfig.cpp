#include "inspde/runconfig.hpp"

#include <cmath>
#include <sstream>

#include "inspde/errors.hpp"

namespace inspde {

namespace {

bool grid_aligned(double span, double dt) {
    const double f = span / dt;
    return std::abs(f - std::round(f)) <= 1e-9 * std::max(1.0, std::abs(f));
}

std::string render_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

FormSpec read_form(const KvFile& kv, const std::string& prefix, std::vector<std::string>& errors) {
    FormSpec fs;
    if (auto f = kv.get_string(prefix + ".form", errors)) fs.form = *f;
    if (auto s = kv.get_double(prefix + ".scale", errors)) fs.scale = *s;
    if (auto l = kv.get_double(prefix + ".lag", errors)) fs.lag = *l;
    if (auto v = kv.get_double_list(prefix + ".value", errors)) fs.value = *v;
    static const char* known[] = {"zero", "constant", "linear", "bounded-nonlinear"};
    bool ok = false;
    for (const char* k : known) ok = ok || fs.form == k;
    if (!ok) errors.push_back(prefix + ".form: unknown form `" + fs.form + "`");
    if (fs.form == "constant" && fs.value.empty() && prefix != "coeffs.b")
        errors.push_back(prefix + ".value: constant form requires a value vector");
    if (fs.lag < 0.0) errors.push_back(prefix + ".lag: must be nonnegative");
    return fs;
}

ConfigResult build(KvFile kv, const CliOverrides& overrides, std::vector<std::string> errors) {
    // Fold overrides into the effective config before anything is read, so
    // the hash and the run see the same values.
    if (overrides.seed) kv.set("noise.seed", std::to_string(*overrides.seed));
    if (overrides.paths) kv.set("noise.paths", std::to_string(*overrides.paths));
    if (overrides.out_dir) kv.set("output.dir", *overrides.out_dir);
    if (overrides.workers) kv.set("output.workers", std::to_string(*overrides.workers));

    RunConfig rc;
    rc.force = overrides.force;

    // ---- model space ----
    std::string label = "model";
    if (auto l = kv.get_string("model.label", errors)) label = *l;
    std::optional<SpectralModel> space;
    const bool has_mu = kv.has("model.mu");
    const bool has_lap = kv.has("model.laplacian_modes");
    if (has_mu == has_lap) {
        errors.push_back("model: exactly one of model.mu / model.laplacian_modes is required");
        kv.get_double_list("model.mu", errors);
        kv.get_int("model.laplacian_modes", errors);
    } else if (has_mu) {
        if (auto mu = kv.get_double_list("model.mu", errors)) {
            try {
                space = SpectralModel::make(label, *mu);
            } catch (const std::exception& e) {
                errors.push_back(std::string("model.mu: ") + e.what());
            }
        }
    } else {
        if (auto n = kv.get_int("model.laplacian_modes", errors)) {
            if (*n < 1)
                errors.push_back("model.laplacian_modes: must be >= 1");
            else
                space = SpectralModel::laplacian(static_cast<int>(*n), label);
        }
    }

    // ---- sim block ----
    double T = 0.0, dt = 0.0, p = 2.0, r = 0.0;
    if (auto v = kv.get_double("sim.T", errors)) T = *v;
    else errors.push_back("sim.T: required");
    if (auto v = kv.get_double("sim.dt", errors)) dt = *v;
    else errors.push_back("sim.dt: required");
    if (auto v = kv.get_double("sim.p", errors)) p = *v;
    else errors.push_back("sim.p: required");
    if (auto v = kv.get_double("delay.r", errors)) r = *v;
    else errors.push_back("delay.r: required");

    if (T <= 0.0) errors.push_back("sim.T: must be positive");
    if (dt <= 0.0) errors.push_back("sim.dt: must be positive");
    if (p < 2.0) errors.push_back("sim.p: must be >= 2");
    if (r < 0.0) errors.push_back("delay.r: must be nonnegative");

    rc.solver.dt = dt;
    if (auto v = kv.get_double("sim.picard_tol", errors)) {
        if (*v <= 0.0) errors.push_back("sim.picard_tol: must be positive");
        else rc.solver.picard_tol = *v;
    }
    if (auto v = kv.get_int("sim.picard_max_iter", errors)) {
        if (*v < 1) errors.push_back("sim.picard_max_iter: must be >= 1");
        else rc.solver.picard_max_iter = static_cast<int>(*v);
    }

    if (dt > 0.0) {
        if (T > 0.0 && !grid_aligned(T, dt))
            errors.push_back("grid-alignment: sim.T is not an integer multiple of sim.dt");
        if (r > 0.0 && !grid_aligned(r, dt))
            errors.push_back("grid-alignment: delay.r is not an integer multiple of sim.dt");
    }

    // ---- coefficients ----
    double alpha = 1.0;
    if (auto v = kv.get_double("coeffs.alpha", errors)) alpha = *v;
    else errors.push_back("coeffs.alpha: required");
    double C[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 1; i <= 5; ++i) {
        const std::string key = "coeffs.C" + std::to_string(i);
        if (auto v = kv.get_double(key, errors)) {
            if (*v < 0.0) errors.push_back(key + ": must be nonnegative");
            C[i] = *v;
        }
    }

    rc.a_form = read_form(kv, "coeffs.a", errors);
    rc.b_form = read_form(kv, "coeffs.b", errors);
    rc.f_form = read_form(kv, "coeffs.f", errors);

    const bool has_neutral = rc.f_form.form != "zero";
    if (has_neutral) {
        if (!(alpha > 1.0 / p && alpha < 1.0))
            errors.push_back("coeffs.alpha: must lie in (1/p, 1) when a neutral term is present");
    } else if (!(alpha > 0.0 && alpha <= 1.0)) {
        errors.push_back("coeffs.alpha: must lie in (0, 1]");
    }
    for (const FormSpec* fs : {&rc.a_form, &rc.b_form, &rc.f_form}) {
        if (fs->lag > 0.0) {
            if (fs->lag > r + 1e-12) errors.push_back("coeffs lag exceeds delay.r");
            if (dt > 0.0 && !grid_aligned(fs->lag, dt))
                errors.push_back("grid-alignment: a coefficient lag is not a multiple of sim.dt");
        }
    }

    // ---- impulses ----
    std::vector<double> imp_times;
    std::vector<double> imp_scale;
    double h0 = 0.0;
    if (auto v = kv.get_double_list("impulses.times", errors)) imp_times = *v;
    if (auto v = kv.get_double_list("impulses.scale", errors)) imp_scale = *v;
    if (auto v = kv.get_double("impulses.h0", errors)) {
        if (*v < 0.0) errors.push_back("impulses.h0: must be nonnegative");
        else h0 = *v;
    }
    if (auto f = kv.get_string("impulses.form", errors)) rc.impulse_form = *f;
    if (rc.impulse_form != "linear" && rc.impulse_form != "saturating")
        errors.push_back("impulses.form: must be `linear` or `saturating`");
    if (imp_times.size() != imp_scale.size())
        errors.push_back("impulses: times and scale lists must have equal length");
    for (std::size_t k = 0; k < imp_times.size(); ++k) {
        if (!(imp_times[k] > 0.0 && imp_times[k] < T))
            errors.push_back("impulses.times: t_" + std::to_string(k + 1) +
                             " must lie strictly inside (0, T)");
        if (k > 0 && !(imp_times[k] > imp_times[k - 1]))
            errors.push_back("impulses.times: must be strictly increasing");
        if (dt > 0.0 && !grid_aligned(imp_times[k], dt))
            errors.push_back("grid-alignment: impulse time t_" + std::to_string(k + 1) +
                             " is not an integer multiple of sim.dt");
        if (k < imp_scale.size() && !(imp_scale[k] > 0.0))
            errors.push_back("impulses.scale: h_" + std::to_string(k + 1) + " must be positive");
    }

    // ---- initial path ----
    std::vector<double> phi_modes;
    if (kv.has("initial.phi")) {
        std::vector<std::string> probe_errors;
        if (auto lst = kv.get_double_list("initial.phi", probe_errors); lst && probe_errors.empty()) {
            phi_modes = *lst;
        } else {
            std::vector<std::string> scalar_errors;
            if (auto sc = kv.get_double("initial.phi", scalar_errors); sc && scalar_errors.empty())
                phi_modes = {*sc}; // replicated across modes below
            else
                errors.push_back("initial.phi: expected a scalar or a mode vector");
        }
    } else {
        errors.push_back("initial.phi: required");
    }

    // ---- noise ----
    if (auto v = kv.get_double_list("noise.q_eigs", errors)) {
        rc.noise.q_eigs = *v;
        for (double l : rc.noise.q_eigs)
            if (l < 0.0) errors.push_back("noise.q_eigs: eigenvalues must be nonnegative");
        if (rc.noise.q_eigs.empty()) errors.push_back("noise.q_eigs: must be nonempty");
    } else {
        errors.push_back("noise.q_eigs: required");
    }
    if (auto v = kv.get_uint64("noise.seed", errors)) rc.noise.seed = *v;
    else errors.push_back("noise.seed: required");
    if (auto v = kv.get_int("noise.paths", errors)) {
        if (*v < 1) errors.push_back("noise.paths: must be >= 1");
        else rc.paths = static_cast<int>(*v);
    } else {
        errors.push_back("noise.paths: required");
    }

    // ---- family ----
    std::string fam_kind = "yosida";
    if (auto v = kv.get_string("family.kind", errors)) fam_kind = *v;
    if (fam_kind == "yosida") rc.family_kind = FamilyKind::yosida;
    else if (fam_kind == "galerkin") rc.family_kind = FamilyKind::galerkin;
    else if (fam_kind == "shifted") rc.family_kind = FamilyKind::shifted;
    else errors.push_back("family.kind: must be yosida, galerkin or shifted");
    if (auto v = kv.get_double_list("family.indices", errors)) rc.family_indices = *v;
    if (auto v = kv.get_double_list("family.epsilons", errors)) rc.eps_grid = *v;
    if (auto v = kv.get_double("family.shift_scale", errors)) {
        if (*v < 0.0) errors.push_back("family.shift_scale: must be nonnegative");
        else rc.shift_scale = *v;
    }
    for (double e : rc.eps_grid)
        if (e < 0.0) errors.push_back("family.epsilons: entries must be nonnegative");

    // ---- parameter family ----
    if (auto v = kv.get_double("param.theta0", errors)) rc.theta0 = *v;
    if (auto v = kv.get_double_list("param.thetas", errors)) rc.theta_grid = *v;
    if (kv.has("param.g.form")) rc.param_g = read_form(kv, "param.g", errors);

    // ---- output ----
    if (auto v = kv.get_string("output.dir", errors)) rc.out_dir = *v;
    if (auto v = kv.get_int("output.workers", errors)) {
        if (*v < 0) errors.push_back("output.workers: must be >= 0");
        else rc.workers = static_cast<unsigned>(*v);
    }

    for (const std::string& k : kv.unconsumed_keys())
        errors.push_back("unknown key: " + k);

    if (!errors.empty()) return {std::nullopt, std::move(errors)};

    // ---- assemble the model ----
    const int dim = space->dim();
    if (phi_modes.size() == 1 && dim > 1) phi_modes.assign(static_cast<std::size_t>(dim), phi_modes[0]);
    if (static_cast<int>(phi_modes.size()) != dim)
        errors.push_back("initial.phi: mode vector length must equal the model dimension");

    if (rc.b_form.form == "constant" && !rc.b_form.value.empty() &&
        static_cast<int>(rc.b_form.value.size()) < std::min(dim, rc.noise.dim()))
        errors.push_back("coeffs.b.value: too short for the diagonal embedding");

    if (!errors.empty()) return {std::nullopt, std::move(errors)};

    rc.model.space = *space;
    rc.model.delay_r = r;
    rc.model.p = p;
    rc.model.T = T;
    rc.model.coeffs.alpha = alpha;
    rc.model.coeffs.C1 = C[1];
    rc.model.coeffs.C2 = C[2];
    rc.model.coeffs.C3 = C[3];
    rc.model.coeffs.C4 = C[4];
    rc.model.coeffs.C5 = C[5];
    try {
        rc.model.coeffs.a_map = make_drift_form(rc.a_form, dim);
        rc.model.coeffs.b_map = make_diffusion_form(rc.b_form, dim, rc.noise.dim());
        rc.model.coeffs.f_map = make_neutral_form(rc.f_form, *space, alpha);
    } catch (const std::exception& e) {
        errors.push_back(std::string("coeffs: ") + e.what());
        return {std::nullopt, std::move(errors)};
    }

    rc.model.impulses.times = imp_times;
    rc.model.impulses.h_k = imp_scale;
    rc.model.impulses.h0 = h0;
    for (std::size_t k = 0; k < imp_times.size(); ++k)
        rc.model.impulses.maps.push_back(make_impulse_form(rc.impulse_form, imp_scale[k], dim));

    HVector phi0;
    phi0.coeffs = phi_modes;
    rc.model.initial_path = [phi0](double) { return phi0; };

    // ---- mathematical gate ----
    const GateReport gate = wellposedness_check(rc.model);
    if (!gate.pass) {
        errors.push_back("wellposedness: Lemma-gate value " + render_double(gate.value) +
                         " must be < 1" + (gate.detail.empty() ? "" : " (" + gate.detail + ")"));
        return {std::nullopt, std::move(errors)};
    }

    rc.kv = std::move(kv);
    rc.hash = config_hash(rc.kv.canonical_text());
    return {std::move(rc), {}};
}

} // namespace

ConfigResult load_config(const std::string& path, const CliOverrides& overrides) {
    std::vector<std::string> errors;
    KvFile kv = KvFile::parse_file(path, errors);
    if (!errors.empty()) return {std::nullopt, std::move(errors)};
    return build(std::move(kv), overrides, std::move(errors));
}

ConfigResult load_config_text(const std::string& text, const CliOverrides& overrides) {
    std::vector<std::string> errors;
    KvFile kv = KvFile::parse_text(text, errors);
    if (!errors.empty()) return {std::nullopt, std::move(errors)};
    return build(std::move(kv), overrides, std::move(errors));
}

GeneratorFamily RunConfig::make_family() const {
    switch (family_kind) {
    case FamilyKind::yosida: return GeneratorFamily::yosida(model.space);
    case FamilyKind::galerkin: return GeneratorFamily::galerkin(model.space);
    case FamilyKind::shifted: return GeneratorFamily::shifted(model.space, shift_scale);
    }
    throw ContractViolation("unreachable family kind");
}

ThetaFamily RunConfig::make_theta_family() const {
    const CoefficientSet base = model.coeffs;
    const ImpulseSchedule impulses = model.impulses;
    const SpectralModel gen = model.space;
    const double t0 = theta0;
    DriftFn g = make_drift_form(param_g, model.space.dim());
    if (!g)
        throw ContractViolation("param.g: a nonzero form is required for the theta family");
    return [base, impulses, gen, t0, g](double theta) {
        ThetaMember m{gen, base, impulses};
        const DriftFn a0 = base.a_map;
        const double shift = theta - t0;
        m.coeffs.a_map = [a0, g, shift](double t, const Segment& seg) {
            HVector r = shift * g(t, seg);
            if (a0) r += a0(t, seg);
            return r;
        };
        return m;
    };
}

ExperimentConfig RunConfig::experiment_config() const {
    ExperimentConfig ec;
    ec.noise = noise;
    ec.solver = solver;
    ec.paths = paths;
    ec.workers = workers;
    return ec;
}

} // namespace inspde

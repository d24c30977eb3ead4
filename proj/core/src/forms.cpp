#include "inspde/forms.hpp"

#include <algorithm>
#include <cmath>

#include "inspde/errors.hpp"

namespace inspde {

namespace {

HVector saturate(const HVector& w, double scale) {
    const double denom = 1.0 + w.norm();
    HVector r(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) r[k] = scale * w[k] / denom;
    return r;
}

} // namespace

DriftFn make_drift_form(const FormSpec& fs, int dim) {
    if (fs.form == "zero") return nullptr;
    if (fs.form == "constant") {
        if (static_cast<int>(fs.value.size()) != dim)
            throw ContractViolation("constant form: value vector must match the model dimension");
        HVector c;
        c.coeffs = fs.value;
        return [c](double, const Segment&) { return c; };
    }
    if (fs.form == "linear") {
        const double scale = fs.scale;
        const double lag = fs.lag;
        return [scale, lag](double, const Segment& seg) { return scale * seg.at_lag(lag); };
    }
    if (fs.form == "bounded-nonlinear") {
        const double scale = fs.scale;
        const double lag = fs.lag;
        return [scale, lag](double, const Segment& seg) { return saturate(seg.at_lag(lag), scale); };
    }
    throw ContractViolation("unknown drift form: " + fs.form);
}

DiffusionFn make_diffusion_form(const FormSpec& fs, int dim, int noise_dim) {
    if (fs.form == "zero") return nullptr;
    const int diag = std::min(dim, noise_dim);
    if (fs.form == "constant") {
        DiffusionValue b(dim, noise_dim);
        if (!fs.value.empty()) {
            if (static_cast<int>(fs.value.size()) < diag)
                throw ContractViolation("constant diffusion form: value vector too short");
            for (int k = 0; k < diag; ++k) b.at(k, k) = fs.value[static_cast<std::size_t>(k)];
        } else {
            for (int k = 0; k < diag; ++k) b.at(k, k) = fs.scale;
        }
        return [b](double, const Segment&) { return b; };
    }
    if (fs.form == "linear") {
        const double scale = fs.scale;
        const double lag = fs.lag;
        return [scale, lag, dim, noise_dim, diag](double, const Segment& seg) {
            const HVector& w = seg.at_lag(lag);
            DiffusionValue b(dim, noise_dim);
            for (int k = 0; k < diag; ++k) b.at(k, k) = scale * w[static_cast<std::size_t>(k)];
            return b;
        };
    }
    if (fs.form == "bounded-nonlinear") {
        const double scale = fs.scale;
        const double lag = fs.lag;
        return [scale, lag, dim, noise_dim, diag](double, const Segment& seg) {
            const HVector s = saturate(seg.at_lag(lag), scale);
            DiffusionValue b(dim, noise_dim);
            for (int k = 0; k < diag; ++k) b.at(k, k) = s[static_cast<std::size_t>(k)];
            return b;
        };
    }
    throw ContractViolation("unknown diffusion form: " + fs.form);
}

DriftFn make_neutral_form(const FormSpec& fs, const SpectralModel& space, double alpha) {
    DriftFn g = make_drift_form(fs, space.dim());
    if (!g) return nullptr;
    return [g, space, alpha](double t, const Segment& seg) {
        return fractional_apply(space, alpha, -1, g(t, seg));
    };
}

ImpulseFn make_impulse_form(const std::string& form, double h, int dim) {
    (void)dim;
    if (form == "linear") {
        return [h](const HVector& x) { return h * x; };
    }
    if (form == "saturating") {
        return [h](const HVector& x) { return saturate(x, h); };
    }
    throw ContractViolation("unknown impulse form: " + form);
}

} // namespace inspde

#pragma once

#include <string>
#include <vector>

#include "inspde/model.hpp"

namespace inspde {

/// Named builtin coefficient forms. All forms are time-autonomous and read a
/// single window slot `lag` seconds before the segment end:
///   zero              : 0
///   constant          : the given value vector
///   linear            : scale * w
///   bounded-nonlinear : scale * w / (1 + |w|)   (globally bounded by scale,
///                       Lipschitz with constant scale)
/// where w is the lagged window value. Diffusion forms embed the same maps
/// diagonally into an N x J matrix.
struct FormSpec {
    std::string form = "zero";
    double scale = 0.0;
    double lag = 0.0;
    std::vector<double> value; // constant form payload
};

DriftFn make_drift_form(const FormSpec& fs, int dim);

DiffusionFn make_diffusion_form(const FormSpec& fs, int dim, int noise_dim);

/// Neutral-term factory: the form describes g, and the returned map is
/// f = (-A)^{-alpha} g, so f ranges in D((-A)^alpha) by construction.
DriftFn make_neutral_form(const FormSpec& fs, const SpectralModel& space, double alpha);

/// Impulse builtins: "linear" is I(x) = h * x, "saturating" is
/// I(x) = h * x / (1 + |x|); both are h-Lipschitz with I(0) = 0.
ImpulseFn make_impulse_form(const std::string& form, double h, int dim);

} // namespace inspde

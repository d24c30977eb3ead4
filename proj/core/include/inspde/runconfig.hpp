#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inspde/approximants.hpp"
#include "inspde/experiments.hpp"
#include "inspde/forms.hpp"
#include "inspde/kvfile.hpp"
#include "inspde/model.hpp"

namespace inspde {

/// Command-line overrides folded into the effective config before hashing.
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> paths;
    std::optional<std::string> out_dir;
    std::optional<unsigned> workers;
    bool force = false;
};

/// Parsed and validated union of all module config keys. Every simulation
/// entry point goes through `load`, which runs the full schema plus
/// mathematical-gate validation and reports every violation rather than
/// stopping at the first.
struct RunConfig {
    // effective config
    KvFile kv;
    std::string hash;

    // assembled model
    ModelSpec model;
    NoiseSpec noise;
    SolverConfig solver;
    int paths = 100;
    unsigned workers = 0;
    std::string out_dir = "out";
    bool force = false;

    // generator family
    FamilyKind family_kind = FamilyKind::yosida;
    double shift_scale = 0.0;
    std::vector<double> family_indices;
    std::vector<double> eps_grid;

    // parameter family
    double theta0 = 0.0;
    std::vector<double> theta_grid;
    FormSpec param_g;

    // retained forms (the theta family rebuilds coefficients from these)
    FormSpec a_form, b_form, f_form;
    std::string impulse_form = "saturating";

    GeneratorFamily make_family() const;
    ThetaFamily make_theta_family() const;
    ExperimentConfig experiment_config() const;
};

struct ConfigResult {
    std::optional<RunConfig> config; // set iff errors is empty
    std::vector<std::string> errors;
};

/// Parse + validate a config file with overrides applied.
ConfigResult load_config(const std::string& path, const CliOverrides& overrides = {});

/// Same, from in-memory text (used by tests).
ConfigResult load_config_text(const std::string& text, const CliOverrides& overrides = {});

} // namespace inspde

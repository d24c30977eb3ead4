#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inspde/approximants.hpp"
#include "inspde/model.hpp"
#include "inspde/solver.hpp"

namespace inspde {

/// Monte Carlo estimate of sup over the grid of the pth-mean error between
/// two coupled path families.
struct ErrorEstimate {
    double value = 0.0;    // max_t mean_paths |x_a(t) - x_b(t)|^p
    double stderr_ = 0.0;  // standard error of the mean at argmax_t
    int paths = 0;
    double argmax_t = 0.0;
};

struct ExperimentRow {
    double index_value = 0.0;
    ErrorEstimate estimate;
    bool failed = false;
    std::string message;
};

struct ReportMeta {
    std::string index_kind;   // "n", "eps" or "theta"
    std::string model_label;
    std::uint64_t seed = 0;
    double dt = 0.0;
    int space_dim = 0;
    int noise_dim = 0;
    double p = 2.0;
    double T = 0.0;
    int paths = 0;
    std::string config_hash;
};

struct ExperimentReport {
    ReportMeta meta;
    std::vector<ExperimentRow> rows;
};

struct ExperimentConfig {
    NoiseSpec noise;
    SolverConfig solver;
    int paths = 100;
    unsigned workers = 0; // 0 = hardware concurrency
};

/// For each grid time t in [0, T], the sample mean over paths of
/// |x_a(t) - x_b(t)|^p; returns the max over t with the standard error of
/// the mean at the arg max. Both lists must hold pairwise coupled paths on
/// identical grids.
ErrorEstimate pth_mean_sup_error(const std::vector<Trajectory>& paths_a,
                                 const std::vector<Trajectory>& paths_b, double p);

/// Generator-approximation decay: for each n, solves the member system and
/// the base system under common increments per path and reports the pth-mean
/// sup error. Rows for members failing their own well-posedness gate (or any
/// solver error) are recorded as failed, not thrown.
ExperimentReport trotter_kato_experiment(const ModelSpec& spec, const GeneratorFamily& fam,
                                         std::span<const double> n_grid,
                                         const ExperimentConfig& cfg);

/// Small-noise decay: for each eps, solves the system with diffusion eps*b
/// and generator A_eps (the shifted family member when given, the base model
/// otherwise) against the deterministic solution; eps = 0 rows degenerate to
/// the deterministic system exactly.
ExperimentReport zeroth_order_experiment(const ModelSpec& spec,
                                         const std::optional<GeneratorFamily>& shifted,
                                         std::span<const double> eps_grid,
                                         const ExperimentConfig& cfg);

/// One member of a parameter-indexed equation family.
struct ThetaMember {
    SpectralModel generator;
    CoefficientSet coeffs;
    ImpulseSchedule impulses;
};
using ThetaFamily = std::function<ThetaMember(double)>;

/// Parameter-dependence decay: for each theta, solves the member equation
/// against the theta0 member under common increments per path.
ExperimentReport parameter_family_experiment(const ModelSpec& base_spec, const ThetaFamily& family,
                                             std::span<const double> theta_grid, double theta0,
                                             const ExperimentConfig& cfg);

struct AprioriReport {
    double bound = 0.0;       // sup_t mean |x(t)|^p over all paths
    double bound_half = 0.0;  // same estimate over the first half of the paths
    double rel_change = 0.0;  // |bound - bound_half| / max(bound, tiny)
    double argmax_t = 0.0;
    int paths = 0;
    bool stable = false;      // rel_change < 0.10
};

/// Finiteness and path-count stability of sup_t E|x(t)|^p.
AprioriReport apriori_bound_check(const ModelSpec& spec, const SpectralModel& generator,
                                  const ExperimentConfig& cfg);

} // namespace inspde

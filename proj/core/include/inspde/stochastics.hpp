#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "inspde/hvector.hpp"
#include "inspde/spectral.hpp"

namespace inspde {

/// Truncated Q-Wiener process specification: covariance eigenvalues
/// q_eigs[j] = lambda_j with Q e_j = lambda_j e_j, j < noise_dim. The trace
/// sum(lambda_j) is finite by truncation. `seed` is the single root seed all
/// path streams derive from.
struct NoiseSpec {
    std::vector<double> q_eigs;
    std::uint64_t seed = 0;

    int dim() const { return static_cast<int>(q_eigs.size()); }
    double trace() const;
    void validate() const;
};

/// Raw Brownian increments on a time grid: deltas(i, j) is a realization of
/// beta_j(s_{i+1}) - beta_j(s_i) ~ Normal(0, s_{i+1} - s_i). The sqrt(lambda_j)
/// Q-weighting is applied downstream, so the stored numbers are standard
/// Brownian increments; the weights travel alongside so a table is
/// self-contained for the solver.
struct WienerIncrements {
    std::vector<double> grid;   // 0 = s_0 < ... < s_L
    int noise_dim = 0;
    std::vector<double> deltas; // row-major [steps() x noise_dim]
    std::vector<double> q_eigs; // lambda_j of the generating NoiseSpec
    std::uint64_t seed = 0;

    std::size_t steps() const { return grid.empty() ? 0 : grid.size() - 1; }
    double delta(std::size_t i, int j) const {
        return deltas[i * static_cast<std::size_t>(noise_dim) + static_cast<std::size_t>(j)];
    }
    std::span<const double> row(std::size_t i) const {
        return {deltas.data() + i * static_cast<std::size_t>(noise_dim),
                static_cast<std::size_t>(noise_dim)};
    }
};

/// Coordinate representation of an operator in L(Y, X): an N x J matrix
/// acting on noise coordinates.
struct DiffusionValue {
    int rows = 0;
    int cols = 0;
    std::vector<double> m; // row-major

    DiffusionValue() = default;
    DiffusionValue(int n, int j) : rows(n), cols(j), m(static_cast<std::size_t>(n) * j, 0.0) {}

    double at(int k, int j) const { return m[static_cast<std::size_t>(k) * cols + j]; }
    double& at(int k, int j) { return m[static_cast<std::size_t>(k) * cols + j]; }
};

/// Draw the full increment table for one path. Deterministic in
/// (spec.seed, path_index); each (step, mode) cell is an independent stream.
WienerIncrements sample_increments(const NoiseSpec& spec, std::span<const double> grid,
                                   std::uint64_t path_index);

/// |h|_lambda = sqrt( sum_j lambda_j sum_k h_{kj}^2 ), the norm in which the
/// diffusion coefficient is measured.
double lambda_hs_norm(const DiffusionValue& h, const NoiseSpec& spec);

/// One left-point quadrature cell of the stochastic convolution:
/// S(t - s_i) * b * (sqrt(lambda_j)-weighted dw), linear in dw.
HVector convolution_increment(const SpectralModel& m, double t, double s_i,
                              const DiffusionValue& b_val, const NoiseSpec& spec,
                              std::span<const double> dw);

/// Binary replay dump: header of three little-endian u64 (L, J, seed), then
/// L*J row-major IEEE doubles. Grid and Q-weights are not stored; replay
/// supplies the grid and NoiseSpec the dump was taken with.
void write_increments(const WienerIncrements& w, std::ostream& os);
WienerIncrements read_increments(std::istream& is, std::span<const double> grid,
                                 const NoiseSpec& spec);

} // namespace inspde

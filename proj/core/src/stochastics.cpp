#include "inspde/stochastics.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "inspde/errors.hpp"
#include "inspde/rng.hpp"

namespace inspde {

double NoiseSpec::trace() const {
    double s = 0.0;
    for (double l : q_eigs) s += l;
    return s;
}

void NoiseSpec::validate() const {
    if (q_eigs.empty())
        throw ContractViolation("NoiseSpec: at least one Q-eigenvalue required");
    for (double l : q_eigs)
        if (!std::isfinite(l) || l < 0.0)
            throw ContractViolation("NoiseSpec: Q-eigenvalues must be finite and nonnegative");
}

WienerIncrements sample_increments(const NoiseSpec& spec, std::span<const double> grid,
                                   std::uint64_t path_index) {
    spec.validate();
    if (grid.size() < 2 || grid.front() != 0.0)
        throw ContractViolation("sample_increments: grid must start at 0 with at least one step");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ContractViolation("sample_increments: grid must be strictly increasing");

    WienerIncrements w;
    w.grid.assign(grid.begin(), grid.end());
    w.noise_dim = spec.dim();
    w.q_eigs = spec.q_eigs;
    w.seed = spec.seed;
    const std::size_t steps = w.steps();
    w.deltas.resize(steps * static_cast<std::size_t>(w.noise_dim));
    for (std::size_t i = 0; i < steps; ++i) {
        const double sd = std::sqrt(grid[i + 1] - grid[i]);
        for (int j = 0; j < w.noise_dim; ++j) {
            w.deltas[i * static_cast<std::size_t>(w.noise_dim) + static_cast<std::size_t>(j)] =
                sd * rng::standard_normal(spec.seed, path_index, i, static_cast<std::uint64_t>(j));
        }
    }
    return w;
}

double lambda_hs_norm(const DiffusionValue& h, const NoiseSpec& spec) {
    if (h.cols != spec.dim())
        throw ContractViolation("lambda_hs_norm: diffusion columns must match noise dimension");
    double s = 0.0;
    for (int j = 0; j < h.cols; ++j) {
        double col = 0.0;
        for (int k = 0; k < h.rows; ++k) col += h.at(k, j) * h.at(k, j);
        s += spec.q_eigs[static_cast<std::size_t>(j)] * col;
    }
    return std::sqrt(s);
}

HVector convolution_increment(const SpectralModel& m, double t, double s_i,
                              const DiffusionValue& b_val, const NoiseSpec& spec,
                              std::span<const double> dw) {
    if (!(s_i >= 0.0 && s_i < t))
        throw ContractViolation("convolution_increment: need 0 <= s_i < t");
    if (b_val.rows != m.dim() || b_val.cols != spec.dim() ||
        dw.size() != static_cast<std::size_t>(spec.dim()))
        throw ContractViolation("convolution_increment: dimension mismatch");

    // u = b * (sqrt(lambda) .* dw), then S(t - s_i) u.
    HVector u(static_cast<std::size_t>(m.dim()));
    for (int j = 0; j < b_val.cols; ++j) {
        const double w = std::sqrt(spec.q_eigs[static_cast<std::size_t>(j)]) * dw[static_cast<std::size_t>(j)];
        if (w == 0.0) continue;
        for (int k = 0; k < b_val.rows; ++k) u[static_cast<std::size_t>(k)] += b_val.at(k, j) * w;
    }
    return semigroup_apply(m, t - s_i, u);
}

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    if (!is) throw IoError("increments stream: truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

} // namespace

void write_increments(const WienerIncrements& w, std::ostream& os) {
    put_u64(os, w.steps());
    put_u64(os, static_cast<std::uint64_t>(w.noise_dim));
    put_u64(os, w.seed);
    os.write(reinterpret_cast<const char*>(w.deltas.data()),
             static_cast<std::streamsize>(w.deltas.size() * sizeof(double)));
    if (!os) throw IoError("increments stream: write failed");
}

WienerIncrements read_increments(std::istream& is, std::span<const double> grid,
                                 const NoiseSpec& spec) {
    const std::uint64_t steps = get_u64(is);
    const std::uint64_t dim = get_u64(is);
    const std::uint64_t seed = get_u64(is);
    if (grid.size() != steps + 1)
        throw IoError("increments stream: grid size does not match stored step count");
    if (dim != static_cast<std::uint64_t>(spec.dim()))
        throw IoError("increments stream: noise dimension does not match spec");
    WienerIncrements w;
    w.grid.assign(grid.begin(), grid.end());
    w.noise_dim = static_cast<int>(dim);
    w.q_eigs = spec.q_eigs;
    w.seed = seed;
    w.deltas.resize(steps * dim);
    is.read(reinterpret_cast<char*>(w.deltas.data()),
            static_cast<std::streamsize>(w.deltas.size() * sizeof(double)));
    if (!is) throw IoError("increments stream: truncated payload");
    return w;
}

} // namespace inspde

#include "inspde/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "inspde/errors.hpp"

namespace inspde {

SpectralModel::SpectralModel(std::string label, std::vector<double> mu)
    : label_(std::move(label)), mu_(std::move(mu)) {
    mu_min_ = *std::min_element(mu_.begin(), mu_.end());
}

SpectralModel SpectralModel::make(std::string label, std::vector<double> mu) {
    if (mu.empty())
        throw ContractViolation("SpectralModel: at least one mode required");
    for (std::size_t k = 0; k < mu.size(); ++k) {
        if (!std::isfinite(mu[k]) || mu[k] <= 0.0)
            throw ContractViolation("SpectralModel: eigenvalues of -A must be finite and positive");
        if (k > 0 && mu[k] < mu[k - 1])
            throw ContractViolation("SpectralModel: eigenvalues must be sorted ascending");
    }
    return SpectralModel(std::move(label), std::move(mu));
}

SpectralModel SpectralModel::make_member(std::string label, std::vector<double> mu) {
    if (mu.empty())
        throw ContractViolation("SpectralModel: at least one mode required");
    for (double m : mu) {
        if (!std::isfinite(m) || m < 0.0)
            throw ContractViolation("SpectralModel: member eigenvalues must be finite and nonnegative");
    }
    return SpectralModel(std::move(label), std::move(mu));
}

SpectralModel SpectralModel::laplacian(int n_modes, std::string label) {
    if (n_modes < 1)
        throw ContractViolation("SpectralModel::laplacian: n_modes must be positive");
    std::vector<double> mu(static_cast<std::size_t>(n_modes));
    for (int k = 0; k < n_modes; ++k)
        mu[static_cast<std::size_t>(k)] = static_cast<double>((k + 1)) * (k + 1);
    return SpectralModel(std::move(label), std::move(mu));
}

void SpectralModel::require_conforming(const HVector& v) const {
    if (static_cast<int>(v.size()) != dim())
        throw ContractViolation("vector dimension does not match model dimension");
}

HVector apply_generator(const SpectralModel& m, const HVector& v) {
    m.require_conforming(v);
    HVector r(v.size());
    const auto& mu = m.eigenvalues();
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = -mu[k] * v[k];
    return r;
}

HVector semigroup_apply(const SpectralModel& m, double t, const HVector& v) {
    m.require_conforming(v);
    if (!(t >= 0.0))
        throw ContractViolation("semigroup_apply: t must be nonnegative");
    HVector r(v.size());
    const auto& mu = m.eigenvalues();
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = std::exp(-mu[k] * t) * v[k];
    return r;
}

HVector fractional_apply(const SpectralModel& m, double alpha, int sign, const HVector& v) {
    m.require_conforming(v);
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ContractViolation("fractional_apply: alpha must lie in (0, 1]");
    if (sign != 1 && sign != -1)
        throw ContractViolation("fractional_apply: sign must be +1 or -1");
    if (!m.strictly_positive())
        throw ContractViolation("fractional_apply: requires all eigenvalues positive (0 in rho(A))");
    HVector r(v.size());
    const auto& mu = m.eigenvalues();
    const double e = sign * alpha;
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = std::pow(mu[k], e) * v[k];
    return r;
}

HVector resolvent_apply(const SpectralModel& m, double lambda, const HVector& v) {
    m.require_conforming(v);
    const auto& mu = m.eigenvalues();
    for (double mk : mu)
        if (lambda + mk == 0.0)
            throw SingularResolvent("resolvent_apply: lambda + mu_k == 0");
    if (!(lambda > -m.mu_min()))
        throw ContractViolation("resolvent_apply: lambda must exceed -mu_min");
    HVector r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k] / (lambda + mu[k]);
    return r;
}

bool sectorial_check(const SpectralModel& m, double M, double delta,
                     std::span<const double> lambda_samples) {
    if (lambda_samples.empty())
        throw ContractViolation("sectorial_check: sample list must be nonempty");
    const auto& mu = m.eigenvalues();
    for (double lambda : lambda_samples) {
        if (!(lambda > delta))
            throw ContractViolation("sectorial_check: samples must satisfy lambda > delta");
        double rnorm = 0.0;
        for (double mk : mu) {
            const double d = std::abs(lambda + mk);
            rnorm = (d == 0.0) ? std::numeric_limits<double>::infinity()
                               : std::max(rnorm, 1.0 / d);
        }
        if ((lambda - delta) * rnorm > M) return false;
    }
    return true;
}

double generator_semigroup_norm(const SpectralModel& m, double t) {
    if (!(t > 0.0))
        throw ContractViolation("generator_semigroup_norm: t must be positive");
    double best = 0.0;
    for (double mk : m.eigenvalues()) best = std::max(best, mk * std::exp(-mk * t));
    return best;
}

double semigroup_integral_weight(double mu, double dt) {
    if (mu == 0.0) return dt;
    return -std::expm1(-mu * dt) / mu;
}

} // namespace inspde

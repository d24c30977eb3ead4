#include "inspde/approximants.hpp"

#include <cmath>
#include <utility>

#include "inspde/errors.hpp"

namespace inspde {

const char* to_string(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::yosida: return "yosida";
    case FamilyKind::galerkin: return "galerkin";
    case FamilyKind::shifted: return "shifted";
    }
    return "unknown";
}

GeneratorFamily::GeneratorFamily(SpectralModel base, FamilyKind kind, double shift_scale)
    : base_(std::move(base)), kind_(kind), shift_scale_(shift_scale) {}

GeneratorFamily GeneratorFamily::yosida(SpectralModel base) {
    return GeneratorFamily(std::move(base), FamilyKind::yosida, 0.0);
}

GeneratorFamily GeneratorFamily::galerkin(SpectralModel base) {
    return GeneratorFamily(std::move(base), FamilyKind::galerkin, 0.0);
}

GeneratorFamily GeneratorFamily::shifted(SpectralModel base, double shift_scale) {
    if (!(shift_scale >= 0.0))
        throw ContractViolation("GeneratorFamily::shifted: shift_scale must be nonnegative");
    return GeneratorFamily(std::move(base), FamilyKind::shifted, shift_scale);
}

namespace {

int integer_index(double index, const char* what) {
    const double r = std::round(index);
    if (!(index >= 1.0) || std::abs(index - r) > 1e-9)
        throw ContractViolation(std::string(what) + ": index must be an integer >= 1");
    return static_cast<int>(r);
}

} // namespace

SpectralModel GeneratorFamily::member(double index) const {
    const auto& mu = base_.eigenvalues();
    std::vector<double> out(mu.size());
    switch (kind_) {
    case FamilyKind::yosida: {
        const double n = integer_index(index, "yosida member");
        for (std::size_t k = 0; k < mu.size(); ++k) out[k] = n * mu[k] / (n + mu[k]);
        break;
    }
    case FamilyKind::galerkin: {
        const int n = integer_index(index, "galerkin member");
        for (std::size_t k = 0; k < mu.size(); ++k)
            out[k] = (static_cast<int>(k) < n) ? mu[k] : 0.0;
        break;
    }
    case FamilyKind::shifted: {
        if (!(index > 0.0))
            throw ContractViolation("shifted member: eps must be positive");
        for (std::size_t k = 0; k < mu.size(); ++k) out[k] = mu[k] * (1.0 + shift_scale_ * index);
        break;
    }
    }
    return SpectralModel::make_member(base_.label() + "/" + to_string(kind_), std::move(out));
}

double resolvent_gap(const GeneratorFamily& fam, double index, double lambda, const HVector& v) {
    if (!(lambda > 0.0))
        throw ContractViolation("resolvent_gap: lambda must be positive");
    fam.base().require_conforming(v);
    const SpectralModel mem = fam.member(index);
    const HVector a = resolvent_apply(mem, lambda, v);
    const HVector b = resolvent_apply(fam.base(), lambda, v);
    return distance(a, b);
}

double semigroup_gap(const GeneratorFamily& fam, double index,
                     std::span<const double> t_grid, const HVector& v) {
    if (t_grid.empty())
        throw ContractViolation("semigroup_gap: grid must be nonempty");
    fam.base().require_conforming(v);
    const SpectralModel mem = fam.member(index);
    double worst = 0.0;
    for (double t : t_grid) {
        if (!(t >= 0.0))
            throw ContractViolation("semigroup_gap: grid times must be nonnegative");
        const double d = distance(semigroup_apply(mem, t, v), semigroup_apply(fam.base(), t, v));
        worst = std::max(worst, d);
    }
    return worst;
}

double generator_semigroup_gap(const GeneratorFamily& fam, double index,
                               std::span<const double> t_grid, const HVector& v) {
    if (t_grid.empty())
        throw ContractViolation("generator_semigroup_gap: grid must be nonempty");
    fam.base().require_conforming(v);
    const SpectralModel mem = fam.member(index);
    double worst = 0.0;
    for (double t : t_grid) {
        if (!(t > 0.0))
            throw ContractViolation("generator_semigroup_gap: grid must exclude t = 0");
        const HVector a = apply_generator(mem, semigroup_apply(mem, t, v));
        const HVector b = apply_generator(fam.base(), semigroup_apply(fam.base(), t, v));
        worst = std::max(worst, distance(a, b));
    }
    return worst;
}

} // namespace inspde

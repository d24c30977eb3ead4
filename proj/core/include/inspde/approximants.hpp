#pragma once

#include <span>
#include <string>

#include "inspde/spectral.hpp"

namespace inspde {

enum class FamilyKind { yosida, galerkin, shifted };

const char* to_string(FamilyKind kind);

/// Indexed family of diagonal generators converging to a base model in the
/// strong resolvent sense:
///   yosida   member n   : mode eigenvalue n*mu/(n + mu), n = 1, 2, ...
///   galerkin member n   : keeps modes k <= n, freezes the rest at zero action
///   shifted  member eps : mode eigenvalue mu*(1 + shift_scale*eps), eps > 0
///
/// Every member shares the base model's state dimension and mode ordering,
/// so coupled solves and gap norms need no embedding maps. All members are
/// sectorial with the same (M, delta) = (1, 0) as the base.
class GeneratorFamily {
public:
    static GeneratorFamily yosida(SpectralModel base);
    static GeneratorFamily galerkin(SpectralModel base);
    /// shift_scale tunes the eps coupling; 0 makes every member equal to the
    /// base (the A_eps = A reading used to isolate small-noise scaling).
    static GeneratorFamily shifted(SpectralModel base, double shift_scale = 1.0);

    /// The member model at the given index (integer n >= 1 for yosida and
    /// galerkin, real eps > 0 for shifted).
    SpectralModel member(double index) const;

    const SpectralModel& base() const { return base_; }
    FamilyKind kind() const { return kind_; }
    double shift_scale() const { return shift_scale_; }

private:
    GeneratorFamily(SpectralModel base, FamilyKind kind, double shift_scale);

    SpectralModel base_;
    FamilyKind kind_;
    double shift_scale_;
};

/// ||R(lambda, A_n) v - R(lambda, A) v|| for lambda > 0; the quantity whose
/// decay to zero is strong resolvent convergence.
double resolvent_gap(const GeneratorFamily& fam, double index, double lambda, const HVector& v);

/// max over the grid of ||S_n(t) v - S(t) v||; grid times must be >= 0.
double semigroup_gap(const GeneratorFamily& fam, double index,
                     std::span<const double> t_grid, const HVector& v);

/// max over the grid of ||A_n S_n(t) v - A S(t) v||; the grid must stay away
/// from 0 where ||A S(t)|| blows up.
double generator_semigroup_gap(const GeneratorFamily& fam, double index,
                               std::span<const double> t_grid, const HVector& v);

} // namespace inspde

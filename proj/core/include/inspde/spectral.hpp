#pragma once

#include <span>
#include <string>
#include <vector>

#include "inspde/hvector.hpp"

namespace inspde {

/// Diagonal negative-definite generator on a truncated eigenbasis:
/// A e_k = -mu_k e_k with mu_k > 0, so S(t) = e^{tA} acts as e^{-mu_k t}
/// per mode and every operator function is a componentwise map.
///
/// Sign convention, stated once: fractional powers are powers of -A, i.e.
/// fractional_apply(+alpha) realizes (-A)^alpha = diag(mu_k^alpha) and
/// fractional_apply(-alpha) realizes (-A)^{-alpha}, with
/// ||(-A)^{-alpha}|| = mu_min^{-alpha}.
class SpectralModel {
public:
    /// Empty placeholder; any use with a nonempty vector trips the
    /// dimension check. Real models come from the factories below.
    SpectralModel() = default;

    /// Canonical construction for user-facing models: requires every
    /// mu_k > 0 and the list sorted ascending (reproducible truncation).
    static SpectralModel make(std::string label, std::vector<double> mu);

    /// Construction path for generator-family members, which must keep the
    /// mode <-> coordinate correspondence of their base model: ordering is
    /// preserved as given and zero eigenvalues are allowed (a Galerkin
    /// projection freezes truncated modes at zero action). Fractional
    /// powers still demand strict positivity.
    static SpectralModel make_member(std::string label, std::vector<double> mu);

    /// mu_k = k^2, k = 1..n_modes (Dirichlet Laplacian on (0,pi)); the
    /// reference model used throughout the test suite.
    static SpectralModel laplacian(int n_modes, std::string label = "laplacian");

    int dim() const { return static_cast<int>(mu_.size()); }
    const std::vector<double>& eigenvalues() const { return mu_; }
    double mu_min() const { return mu_min_; }
    const std::string& label() const { return label_; }
    bool strictly_positive() const { return mu_min_ > 0.0; }

    void require_conforming(const HVector& v) const;

private:
    SpectralModel(std::string label, std::vector<double> mu);

    std::string label_;
    std::vector<double> mu_;
    double mu_min_ = 0.0;
};

/// A v, componentwise -mu_k v_k.
HVector apply_generator(const SpectralModel& m, const HVector& v);

/// S(t) v = e^{tA} v, componentwise e^{-mu_k t} v_k; contraction for t >= 0.
HVector semigroup_apply(const SpectralModel& m, double t, const HVector& v);

/// (-A)^{sign*alpha} v, componentwise mu_k^{sign*alpha} v_k, alpha in (0,1].
HVector fractional_apply(const SpectralModel& m, double alpha, int sign, const HVector& v);

/// R(lambda, A) v = (lambda I - A)^{-1} v, componentwise v_k / (lambda + mu_k).
HVector resolvent_apply(const SpectralModel& m, double lambda, const HVector& v);

/// True iff (lambda - delta) * ||R(lambda, A)|| <= M for every sample; for
/// the diagonal class ||R(lambda, A)|| = max_k 1/|lambda + mu_k|. Samples
/// must satisfy lambda > delta. A sample hitting the spectrum exactly makes
/// the bound infinite and the check false.
bool sectorial_check(const SpectralModel& m, double M, double delta,
                     std::span<const double> lambda_samples);

/// ||A S(t)|| = max_k mu_k e^{-mu_k t}; the Lemma-level analytic bound is
/// t * ||A S(t)|| <= 1/e for this class.
double generator_semigroup_norm(const SpectralModel& m, double t);

/// Integral of the semigroup over one step: D(dt) = int_0^dt S(u) du acts
/// componentwise as (1 - e^{-mu_k dt}) / mu_k, with the mu -> 0 limit dt.
double semigroup_integral_weight(double mu, double dt);

} // namespace inspde

#include <doctest.h>

#include <cmath>
#include <vector>

#include "inspde/approximants.hpp"
#include "inspde/errors.hpp"

using namespace inspde;

namespace {

std::vector<double> grid01(int n) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
    return g;
}

} // namespace

TEST_CASE("family members") {
    const auto base1 = SpectralModel::make("b", {1.0});
    const auto yos = GeneratorFamily::yosida(base1);
    CHECK(yos.member(1).eigenvalues()[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(yos.member(4).eigenvalues()[0] == doctest::Approx(0.8).epsilon(1e-15));

    const auto base2 = SpectralModel::make("b2", {1.0, 4.0});
    const auto shf = GeneratorFamily::shifted(base2, 1.0);
    const auto m = shf.member(0.5);
    CHECK(m.eigenvalues()[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(m.eigenvalues()[1] == doctest::Approx(6.0).epsilon(1e-15));

    const auto gal = GeneratorFamily::galerkin(base2);
    CHECK(gal.member(1).eigenvalues() == std::vector<double>{1.0, 0.0});
    CHECK(gal.member(2).eigenvalues() == std::vector<double>{1.0, 4.0});

    CHECK_THROWS_AS(yos.member(0.0), ContractViolation);
    CHECK_THROWS_AS(yos.member(1.5), ContractViolation);
    CHECK_THROWS_AS(shf.member(0.0), ContractViolation);
}

TEST_CASE("resolvent gap values") {
    const auto fam = GeneratorFamily::yosida(SpectralModel::make("b", {1.0}));

    // Hand-evaluated scalar resolvents: |1/(1 + 1/2) - 1/2| = 1/6.
    CHECK(resolvent_gap(fam, 1, 1.0, HVector{1.0}) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    // Closed-form near-limit surrogate: n = 1e6 gives |1/(1 + n/(n+1)) - 1/2| ~ 2.5e-7.
    CHECK(resolvent_gap(fam, 1e6, 1.0, HVector{1.0}) <= 1e-6);

    CHECK(resolvent_gap(fam, 1, 1.0, HVector{0.0}) == 0.0);
}

TEST_CASE("semigroup gap values") {
    const auto base = SpectralModel::make("b", {1.0});
    const auto fam = GeneratorFamily::yosida(base);
    const std::vector<double> at1{1.0};

    // Hand-evaluated |e^{-1/2} - e^{-1}| = 0.2386512185411911.
    CHECK(semigroup_gap(fam, 1, at1, HVector{1.0}) ==
          doctest::Approx(0.2386512185411911).epsilon(1e-12));

    const auto base2 = SpectralModel::make("b2", {1.0, 4.0});
    const auto gal = GeneratorFamily::galerkin(base2);
    CHECK(semigroup_gap(gal, 2, grid01(16), HVector{1.0, 1.0}) == 0.0);

    CHECK(semigroup_gap(fam, 1, grid01(16), HVector{0.0}) == 0.0);
}

TEST_CASE("generator-semigroup gap values") {
    const auto fam = GeneratorFamily::yosida(SpectralModel::make("b", {1.0}));
    const std::vector<double> at1{1.0};

    // Hand-evaluated |0.5 e^{-1/2} - e^{-1}| = 0.06461411131512562.
    CHECK(generator_semigroup_gap(fam, 1, at1, HVector{1.0}) ==
          doctest::Approx(0.06461411131512562).epsilon(1e-12));

    const auto base2 = SpectralModel::make("b2", {1.0, 4.0});
    const auto gal = GeneratorFamily::galerkin(base2);
    CHECK(generator_semigroup_gap(gal, 2, at1, HVector{1.0, 1.0}) == 0.0);
    CHECK(generator_semigroup_gap(fam, 1, at1, HVector{0.0}) == 0.0);

    const std::vector<double> with_zero{0.0, 1.0};
    CHECK_THROWS_AS(generator_semigroup_gap(fam, 1, with_zero, HVector{1.0}),
                    ContractViolation);
}

TEST_CASE("uniform sectoriality across families") {
    const auto base = SpectralModel::laplacian(16);
    const std::vector<double> samples{0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};
    for (const auto& fam : {GeneratorFamily::yosida(base), GeneratorFamily::galerkin(base),
                            GeneratorFamily::shifted(base, 1.0)}) {
        for (double idx : {1.0, 4.0, 16.0}) {
            const SpectralModel m = fam.member(idx);
            CHECK(sectorial_check(m, 1.0, 0.0, samples));
        }
    }
}

TEST_CASE("yosida eigenvalue ordering") {
    const auto base = SpectralModel::laplacian(16);
    const auto fam = GeneratorFamily::yosida(base);
    std::vector<double> prev(16, 0.0);
    for (double n : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        const auto mem = fam.member(n);
        for (int k = 0; k < 16; ++k) {
            const double nu = mem.eigenvalues()[static_cast<std::size_t>(k)];
            const double mu = base.eigenvalues()[static_cast<std::size_t>(k)];
            CHECK(nu < mu);
            CHECK(nu > prev[static_cast<std::size_t>(k)]);
            prev[static_cast<std::size_t>(k)] = nu;
        }
    }
}

TEST_CASE("monotone convergence probe on the reference model") {
    const auto base = SpectralModel::laplacian(16);
    const auto fam = GeneratorFamily::yosida(base);
    HVector e1(16);
    e1[0] = 1.0;
    const auto tg = grid01(100);

    double prev_res = -1.0, prev_sem = -1.0;
    double first_res = 0.0, first_sem = 0.0, last_res = 0.0, last_sem = 0.0;
    bool first = true;
    for (double n : {1.0, 4.0, 16.0, 64.0, 256.0}) {
        const double g_res = resolvent_gap(fam, n, 1.0, e1);
        const double g_sem = semigroup_gap(fam, n, tg, e1);
        if (!first) {
            CHECK(g_res < prev_res);
            CHECK(g_sem < prev_sem);
        } else {
            first_res = g_res;
            first_sem = g_sem;
            first = false;
        }
        prev_res = g_res;
        prev_sem = g_sem;
        last_res = g_res;
        last_sem = g_sem;
    }
    CHECK(last_res <= 0.02 * first_res);
    CHECK(last_sem <= 0.02 * first_sem);
}

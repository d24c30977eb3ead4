#include <doctest.h>

#include <cmath>
#include <limits>

#include "inspde/errors.hpp"
#include "inspde/experiments.hpp"
#include "inspde/forms.hpp"

using namespace inspde;

namespace {

ModelSpec bare_spec(SpectralModel space, double r, double p, double T) {
    ModelSpec spec;
    spec.space = std::move(space);
    spec.delay_r = r;
    spec.p = p;
    spec.T = T;
    spec.coeffs.alpha = 0.75;
    return spec;
}

ModelSpec ou_spec(double mu, double sigma, double T) {
    auto spec = bare_spec(SpectralModel::make("ou", {mu}), 0.0, 2.0, T);
    FormSpec bf;
    bf.form = "constant";
    bf.scale = sigma;
    spec.coeffs.b_map = make_diffusion_form(bf, 1, 1);
    return spec;
}

ModelSpec reference_spec() {
    const auto space = SpectralModel::laplacian(8, "laplacian8");
    auto spec = bare_spec(space, 0.1, 2.0, 1.0);
    spec.initial_path = [](double) {
        HVector v(8);
        for (int k = 0; k < 8; ++k) v[static_cast<std::size_t>(k)] = 1.0 / (k + 1);
        return v;
    };
    FormSpec a{"bounded-nonlinear", 0.5, 0.1, {}};
    FormSpec b{"bounded-nonlinear", 0.5, 0.1, {}};
    FormSpec f{"bounded-nonlinear", 0.2, 0.0, {}};
    spec.coeffs.a_map = make_drift_form(a, 8);
    spec.coeffs.b_map = make_diffusion_form(b, 8, 8);
    spec.coeffs.f_map = make_neutral_form(f, space, spec.coeffs.alpha);
    spec.coeffs.C1 = 0.25;
    spec.coeffs.C2 = 0.25;
    spec.coeffs.C4 = 0.2;
    spec.coeffs.C5 = 0.2;
    spec.impulses.times = {0.5};
    spec.impulses.maps = {make_impulse_form("saturating", 0.2, 8)};
    spec.impulses.h_k = {0.2};
    return spec;
}

NoiseSpec reference_noise(std::uint64_t seed) {
    NoiseSpec n;
    n.seed = seed;
    for (int j = 1; j <= 8; ++j) n.q_eigs.push_back(1.0 / (j * j));
    return n;
}

// Joint second-moment ODEs for two coupled scalar linear SDEs
//   dx   = (kappa - mu) x dt + sigma dW,   dx_n = (kappa - nu) x_n dt + sigma dW
// under the same W: P = E x^2, Pn = E x_n^2, C = E x x_n, E|x_n - x|^2 = P + Pn - 2C.
double coupled_moment_oracle(double mu, double nu, double kappa, double sigma, double x0,
                             double T, double h) {
    double P = x0 * x0, Pn = x0 * x0, C = x0 * x0;
    const double a = kappa - mu, an = kappa - nu;
    const int n = static_cast<int>(std::round(T / h));
    auto rhs = [&](double p, double pn, double c, double* out) {
        out[0] = 2.0 * a * p + sigma * sigma;
        out[1] = 2.0 * an * pn + sigma * sigma;
        out[2] = (a + an) * c + sigma * sigma;
    };
    double k1[3], k2[3], k3[3], k4[3];
    for (int i = 0; i < n; ++i) {
        rhs(P, Pn, C, k1);
        rhs(P + 0.5 * h * k1[0], Pn + 0.5 * h * k1[1], C + 0.5 * h * k1[2], k2);
        rhs(P + 0.5 * h * k2[0], Pn + 0.5 * h * k2[1], C + 0.5 * h * k2[2], k3);
        rhs(P + h * k3[0], Pn + h * k3[1], C + h * k3[2], k4);
        P += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        Pn += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        C += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
    }
    return P + Pn - 2.0 * C;
}

} // namespace

TEST_CASE("pth mean sup error basics") {
    Trajectory t1(0.1, 0, 10, 2);
    for (int i = 0; i < t1.size(); ++i) t1.at_index(i) = HVector{1.0, 2.0};
    Trajectory t2 = t1;

    const std::vector<Trajectory> a{t1, t1, t1};
    const ErrorEstimate zero = pth_mean_sup_error(a, a, 2.0);
    CHECK(zero.value == 0.0);
    CHECK(zero.stderr_ == 0.0);

    // Constant offset c = (0.3, -0.4): |c|^p = 0.5^3 for p = 3... use p = 2: 0.25.
    for (int i = 0; i < t2.size(); ++i) t2.at_index(i) = HVector{1.3, 1.6};
    const std::vector<Trajectory> b{t2, t2, t2};
    const ErrorEstimate off = pth_mean_sup_error(a, b, 2.0);
    CHECK(off.value == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(off.stderr_ <= 1e-15); // identical per-path values, rounding only

    Trajectory t3(0.1, 0, 5, 2);
    const std::vector<Trajectory> c{t3};
    CHECK_THROWS_AS(pth_mean_sup_error(a, c, 2.0), ContractViolation);
}

TEST_CASE("ou pair matches the gaussian moment oracle") {
    const double mu = 1.0, sigma = 1.0, T = 1.0;
    auto spec = ou_spec(mu, sigma, T);

    ExperimentConfig cfg;
    cfg.noise = NoiseSpec{{1.0}, 909};
    cfg.solver = SolverConfig{1e-3, 1e-10, 50};
    cfg.paths = 10000;
    cfg.workers = 0;

    // x_b is the deterministic zero flow; realized via the zeroth harness at
    // eps = 1 so the same coupling code path is exercised.
    const std::vector<double> eps{1.0};
    const ExperimentReport rep = zeroth_order_experiment(spec, std::nullopt, eps, cfg);
    REQUIRE(rep.rows.size() == 1);
    REQUIRE_FALSE(rep.rows[0].failed);
    const double target = sigma * sigma * (1.0 - std::exp(-2.0 * mu * T)) / (2.0 * mu);
    CHECK(std::abs(rep.rows[0].estimate.value - target) <=
          3.0 * rep.rows[0].estimate.stderr_ + 1e-3);
    // The variance curve plateaus near T, so the empirical argmax lands late
    // but not necessarily at T itself.
    CHECK(rep.rows[0].estimate.argmax_t >= 0.5);
}

TEST_CASE("trotter-kato row matches the coupled linear-SDE oracle") {
    const double mu = 1.0, kappa = 0.3, sigma = 0.5, x0 = 1.0, T = 1.0;
    const double nu = mu * 1.0 / (1.0 + mu); // yosida n = 1

    const double oracle = coupled_moment_oracle(mu, nu, kappa, sigma, x0, T, 1e-4);
    CHECK(oracle == doctest::Approx(0.1146803957964).epsilon(1e-10)); // frozen (RK4)

    auto spec = bare_spec(SpectralModel::make("lin", {mu}), 0.0, 2.0, T);
    spec.initial_path = [x0](double) { return HVector{x0}; };
    FormSpec af;
    af.form = "linear";
    af.scale = kappa;
    af.lag = 0.0;
    spec.coeffs.a_map = make_drift_form(af, 1);
    spec.coeffs.C1 = kappa * kappa;
    FormSpec bf;
    bf.form = "constant";
    bf.scale = sigma;
    spec.coeffs.b_map = make_diffusion_form(bf, 1, 1);

    ExperimentConfig cfg;
    cfg.noise = NoiseSpec{{1.0}, 515};
    cfg.solver = SolverConfig{1e-3, 1e-10, 50};
    cfg.paths = 10000;
    cfg.workers = 0;

    const auto fam = GeneratorFamily::yosida(spec.space);
    const std::vector<double> ns{1.0};
    const ExperimentReport rep = trotter_kato_experiment(spec, fam, ns, cfg);
    REQUIRE_FALSE(rep.rows[0].failed);
    CHECK(std::abs(rep.rows[0].estimate.value - oracle) <=
          3.0 * rep.rows[0].estimate.stderr_ + 2e-3);
}

TEST_CASE("trotter-kato rows decay on the reference model") {
    auto spec = reference_spec();
    ExperimentConfig cfg;
    cfg.noise = reference_noise(42);
    cfg.solver = SolverConfig{2.5e-3, 1e-10, 50};
    cfg.paths = 50;
    cfg.workers = 0;

    const auto fam = GeneratorFamily::yosida(spec.space);
    const std::vector<double> ns{2.0, 8.0, 32.0, 128.0};
    const ExperimentReport rep = trotter_kato_experiment(spec, fam, ns, cfg);
    REQUIRE(rep.rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) REQUIRE_FALSE(rep.rows[i].failed);
    for (std::size_t i = 0; i + 1 < 4; ++i)
        CHECK(rep.rows[i + 1].estimate.value <=
              rep.rows[i].estimate.value + rep.rows[i].estimate.stderr_);
    CHECK(rep.rows[3].estimate.value <= 0.2 * rep.rows[0].estimate.value);
}

TEST_CASE("galerkin full member gives a zero row") {
    auto spec = reference_spec();
    ExperimentConfig cfg;
    cfg.noise = reference_noise(42);
    cfg.solver = SolverConfig{2.5e-3, 1e-10, 50};
    cfg.paths = 10;
    cfg.workers = 0;

    const auto fam = GeneratorFamily::galerkin(spec.space);
    const std::vector<double> ns{8.0}; // full projection: member == base
    const ExperimentReport rep = trotter_kato_experiment(spec, fam, ns, cfg);
    REQUIRE_FALSE(rep.rows[0].failed);
    CHECK(rep.rows[0].estimate.value == 0.0);
}

TEST_CASE("zeroth-order scaling on the linear model") {
    auto spec = ou_spec(1.0, 1.0, 1.0);
    ExperimentConfig cfg;
    cfg.noise = NoiseSpec{{1.0}, 31};
    cfg.solver = SolverConfig{1e-3, 1e-10, 50};
    cfg.paths = 200;
    cfg.workers = 0;

    const std::vector<double> eps{0.4, 0.2, 0.1, 0.0};
    const ExperimentReport rep = zeroth_order_experiment(spec, std::nullopt, eps, cfg);
    REQUIRE(rep.rows.size() == 4);

    // Additive linear dynamics: x_eps = eps * x_1 pathwise, so the error law
    // is exactly quadratic up to rounding.
    const double r01 = rep.rows[0].estimate.value / rep.rows[1].estimate.value;
    const double r12 = rep.rows[1].estimate.value / rep.rows[2].estimate.value;
    CHECK(r01 == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(r12 == doctest::Approx(4.0).epsilon(1e-10));

    const double slope = std::log(rep.rows[0].estimate.value / rep.rows[2].estimate.value) /
                         std::log(0.4 / 0.1);
    CHECK(slope >= 1.8);
    CHECK(slope <= 2.2);

    // eps = 0 degenerates to the deterministic system.
    CHECK(rep.rows[3].estimate.value == 0.0);

    // 3-stderr oracle band per row.
    const double base = (1.0 - std::exp(-2.0)) / 2.0;
    for (int i = 0; i < 3; ++i) {
        const double e = eps[static_cast<std::size_t>(i)];
        CHECK(std::abs(rep.rows[static_cast<std::size_t>(i)].estimate.value - e * e * base) <=
              3.0 * rep.rows[static_cast<std::size_t>(i)].estimate.stderr_ + 1e-3 * e * e);
    }
}

TEST_CASE("zeroth-order rows decay on the reference model") {
    auto spec = reference_spec();
    ExperimentConfig cfg;
    cfg.noise = reference_noise(42);
    cfg.solver = SolverConfig{2.5e-3, 1e-10, 50};
    cfg.paths = 50;
    cfg.workers = 0;

    const std::vector<double> eps{0.4, 0.2, 0.1};
    const ExperimentReport rep = zeroth_order_experiment(spec, std::nullopt, eps, cfg);
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
        CHECK(rep.rows[i + 1].estimate.value <=
              rep.rows[i].estimate.value + rep.rows[i].estimate.stderr_);
}

TEST_CASE("parameter family: quadrature oracle and exact zero at theta0") {
    // Constant perturbation g = c on a scalar model with additive noise: the
    // coupled difference is deterministic and the step rule integrates it
    // exactly, so the row equals (dtheta c (1 - e^{-mu T}) / mu)^2.
    const double mu = 1.0, sigma = 0.5, c = 0.3, T = 1.0;
    auto spec = ou_spec(mu, sigma, T);
    spec.initial_path = [](double) { return HVector{0.7}; };

    FormSpec gform;
    gform.form = "constant";
    gform.value = {c};
    const DriftFn g = make_drift_form(gform, 1);
    const CoefficientSet base_coeffs = spec.coeffs;
    const SpectralModel gen = spec.space;
    const ImpulseSchedule imp = spec.impulses;
    const double theta0 = 0.25;
    const ThetaFamily family = [base_coeffs, gen, imp, g, theta0](double theta) {
        ThetaMember m{gen, base_coeffs, imp};
        const double shift = theta - theta0;
        m.coeffs.a_map = [g, shift](double t, const Segment& seg) { return shift * g(t, seg); };
        return m;
    };

    ExperimentConfig cfg;
    cfg.noise = NoiseSpec{{1.0}, 616};
    cfg.solver = SolverConfig{1e-3, 1e-10, 50};
    cfg.paths = 20;
    cfg.workers = 0;

    const std::vector<double> thetas{theta0 + 0.4, theta0 + 0.2, theta0 + 0.1, theta0};
    const ExperimentReport rep = parameter_family_experiment(spec, family, thetas, theta0, cfg);
    REQUIRE(rep.rows.size() == 4);

    double prev = std::numeric_limits<double>::infinity();
    for (const auto& row : rep.rows) {
        REQUIRE_FALSE(row.failed);
        CHECK(row.estimate.value < prev);
        prev = row.estimate.value;
    }
    CHECK(rep.rows[3].estimate.value == 0.0);

    for (int i = 0; i < 3; ++i) {
        const double dtheta = thetas[static_cast<std::size_t>(i)] - theta0;
        const double oracle = std::pow(dtheta * c * (1.0 - std::exp(-mu * T)) / mu, 2.0);
        CHECK(std::abs(rep.rows[static_cast<std::size_t>(i)].estimate.value - oracle) <= 1e-8);
    }
}

TEST_CASE("a priori moment bound") {
    // Zero data: bound 0.
    auto zero = bare_spec(SpectralModel::make("z", {1.0}), 0.0, 2.0, 1.0);
    FormSpec bf;
    bf.form = "constant";
    bf.scale = 0.0;
    zero.coeffs.b_map = make_diffusion_form(bf, 1, 1);
    ExperimentConfig cfg;
    cfg.noise = NoiseSpec{{1.0}, 5};
    cfg.solver = SolverConfig{1e-2, 1e-10, 50};
    cfg.paths = 100;
    cfg.workers = 0;
    const AprioriReport rz = apriori_bound_check(zero, zero.space, cfg);
    CHECK(rz.bound == 0.0);
    CHECK(rz.stable);

    // Scalar OU: sup_t E x(t)^2 = (1 - e^{-2}) / 2 within 3 stderr.
    auto ou = ou_spec(1.0, 1.0, 1.0);
    ExperimentConfig cfg2;
    cfg2.noise = NoiseSpec{{1.0}, 77};
    cfg2.solver = SolverConfig{1e-3, 1e-10, 50};
    cfg2.paths = 10000;
    cfg2.workers = 0;
    const AprioriReport ro = apriori_bound_check(ou, ou.space, cfg2);
    const double target = (1.0 - std::exp(-2.0)) / 2.0;
    // stderr of the sup estimate ~ target * sqrt(2/paths)
    const double se = target * std::sqrt(2.0 / cfg2.paths);
    CHECK(std::abs(ro.bound - target) <= 3.0 * se + 1e-3);
    CHECK(ro.stable);
    CHECK(ro.rel_change < 0.10);

    // Reference nonlinear model: finite and stable under path doubling.
    auto ref = reference_spec();
    ExperimentConfig cfg3;
    cfg3.noise = reference_noise(42);
    cfg3.solver = SolverConfig{2.5e-3, 1e-10, 50};
    cfg3.paths = 1000;
    cfg3.workers = 0;
    const AprioriReport rr = apriori_bound_check(ref, ref.space, cfg3);
    CHECK(std::isfinite(rr.bound));
    CHECK(rr.bound > 0.0);
    CHECK(rr.stable);
}

TEST_CASE("experiment reruns are bit-identical and worker-count invariant") {
    auto spec = reference_spec();
    const std::vector<double> ns{2.0, 8.0};

    auto run = [&](unsigned workers) {
        ExperimentConfig cfg;
        cfg.noise = reference_noise(42);
        cfg.solver = SolverConfig{2.5e-3, 1e-10, 50};
        cfg.paths = 20;
        cfg.workers = workers;
        return trotter_kato_experiment(spec, GeneratorFamily::yosida(spec.space), ns, cfg);
    };

    const ExperimentReport r1 = run(1);
    const ExperimentReport r2 = run(1);
    const ExperimentReport r4 = run(4);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        CHECK(r1.rows[i].estimate.value == r2.rows[i].estimate.value);
        CHECK(r1.rows[i].estimate.stderr_ == r2.rows[i].estimate.stderr_);
        CHECK(r1.rows[i].estimate.value == r4.rows[i].estimate.value);
        CHECK(r1.rows[i].estimate.stderr_ == r4.rows[i].estimate.stderr_);
    }
}

TEST_CASE("stderr shrinks like one over root paths") {
    auto spec = ou_spec(1.0, 1.0, 1.0);
    auto run = [&](int paths) {
        ExperimentConfig cfg;
        cfg.noise = NoiseSpec{{1.0}, 2048};
        cfg.solver = SolverConfig{2e-3, 1e-10, 50};
        cfg.paths = paths;
        cfg.workers = 0;
        const std::vector<double> eps{1.0};
        return zeroth_order_experiment(spec, std::nullopt, eps, cfg).rows[0].estimate.stderr_;
    };
    const double s1 = run(500);
    const double s4 = run(2000);
    const double ratio = s1 / s4; // ideal 2.0
    CHECK(ratio >= 2.0 / 1.5);
    CHECK(ratio <= 2.0 * 1.5);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pga/monitor.hpp"
#include "support.hpp"

using namespace pga;
using namespace pga::test;

namespace {

Params hydro_params(int m) {
    Params p;
    p.nu = 0.1;
    p.kappa = 1.0;
    p.eps1 = 0.05;
    p.eps2 = 0.2;
    p.f0 = 0.0;
    p.m = m;
    return p;
}

}  // namespace

TEST_CASE("cumulative integral is exact on cubics and 4th order on sin") {
    const int n = 21;
    std::vector<double> ts(n), fs(n);
    for (int i = 0; i < n; ++i) {
        ts[i] = i / 20.0;
        fs[i] = std::pow(ts[i], 3) - 2.0 * ts[i] + 1.0;
    }
    std::vector<double> I = cumulative_integral(ts, fs);
    for (int i = 0; i < n; ++i) {
        const double exact = std::pow(ts[i], 4) / 4.0 - ts[i] * ts[i] + ts[i];
        CHECK(std::abs(I[i] - exact) < 1e-14);
    }

    auto max_err = [](int steps) {
        std::vector<double> t(steps + 1), f(steps + 1);
        for (int i = 0; i <= steps; ++i) {
            t[i] = static_cast<double>(i) / steps;
            f[i] = std::sin(kTwoPi * t[i]);
        }
        std::vector<double> I = cumulative_integral(t, f);
        double err = 0.0;
        for (int i = 0; i <= steps; ++i)
            err = std::max(err, std::abs(I[i] - (1.0 - std::cos(kTwoPi * t[i])) / kTwoPi));
        return err;
    };
    const double e40 = max_err(40);
    const double e80 = max_err(80);
    CHECK(e40 / e80 > 12.0);  // ~16 for a 4th-order rule
}

TEST_CASE("energy functionals: zero state and closed form") {
    EnergyReport z = energy_functionals(State::zero(4));
    CHECK(z.y_offset_free() == 0.0);
    CHECK(z.y() == 1.0);
    CHECK(z.f() == 0.0);
    CHECK(z.g() == 0.0);
    CHECK(z.k() == 0.0);

    // u = sin(2pix) cos(2piz): Y = 1/4 + 2 pi^2 + 8 pi^4
    State s = taylor_like_state(4, 1.0, 0.0, 0.0, 1, 1);
    EnergyReport e = energy_functionals(s);
    const double pi = kTwoPi / 2.0;
    CHECK(e.y_offset_free() ==
          doctest::Approx(0.25 + 2.0 * pi * pi + 8.0 * std::pow(pi, 4)).epsilon(1e-12));

    // quadratic homogeneity under state scaling
    State s2 = s;
    s2.u *= 2.0;
    s2.v *= 2.0;
    s2.T *= 2.0;
    CHECK(energy_functionals(s2).y_offset_free() ==
          doctest::Approx(4.0 * e.y_offset_free()).epsilon(1e-13));
}

TEST_CASE("norms agree with oversampled physical-space quadrature") {
    State s = random_state(6, 19);
    EnergyReport e = energy_functionals(s);
    auto f = [&](double x, double z) { return eval_field(s.u, x, z); };
    const double q = oracle_integral([&](double x, double z) { return f(x, z) * f(x, z); }, 96);
    CHECK(e.u2 == doctest::Approx(q).epsilon(1e-9));
}

TEST_CASE("budget residual of the zero trajectory vanishes") {
    Params p = hydro_params(4);
    StepperConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.1;
    Trajectory traj = run(State::zero(4), p, SystemKind::HydrostaticDamped, cfg);
    for (double r : budget_residual(traj)) CHECK(r == 0.0);
}

TEST_CASE("budget residual on the zonal closed-form run") {
    Params p = hydro_params(2);
    State s0 = State::zero(2);
    s0.u = zonal_field(2, 1.0, 1);
    StepperConfig cfg;
    cfg.dt = 5e-4;
    cfg.t_end = 1.0;
    Trajectory traj = run(s0, p, SystemKind::HydrostaticDamped, cfg);
    const double u02 = std::pow(norm_l2(s0.u), 2);

    // numeric residual from the 4th-order quadrature
    std::vector<double> res = budget_residual(traj);
    double max_res = 0.0;
    for (double r : res) max_res = std::max(max_res, std::abs(r));
    CHECK(max_res <= 1e-10 * u02);

    // every term is closed-form for the single decaying mode
    const double rate = p.nu * kTwoPi * kTwoPi + p.eps1;
    for (const auto& s : traj.samples) {
        const double t = s.t;
        const double analytic_state = u02 * std::exp(-2.0 * rate * t);
        const double analytic_integral = u02 * rate * (1.0 - std::exp(-2.0 * rate * t)) / (2.0 * rate);
        const double resid = s.energy.u2 + 2.0 * analytic_integral - u02;
        CHECK(std::abs(s.energy.u2 - analytic_state) < 1e-12 * u02);
        CHECK(std::abs(resid) < 1e-11 * u02);
    }
}

TEST_CASE("budget residual shrinks at 4th order under dt refinement") {
    Params p = hydro_params(8);
    p.nu = 0.05;
    State s0 = State::zero(8);
    s0.u = random_even(8, 23, 0.5, 2.0, 4);

    auto max_res = [&](double dt) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.5;
        Trajectory traj = run(s0, p, SystemKind::HydrostaticDamped, cfg);
        double r = 0.0;
        for (double x : budget_residual(traj)) r = std::max(r, std::abs(x));
        return r;
    };
    const double r1 = max_res(4e-3);
    const double r2 = max_res(2e-3);
    CHECK(r1 / r2 > std::pow(2.0, 3.5));
    CHECK(r1 < 1e-7 * std::pow(norm_l2(s0.u), 2));
}

TEST_CASE("voigt budget identity on zonal and random runs") {
    Params p = hydro_params(4);
    p.alpha = 0.1;
    State s0 = State::zero(4);
    s0.u = zonal_field(4, 1.0, 1);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    Trajectory traj = run(s0, p, SystemKind::HydrostaticDamped, cfg);
    std::vector<double> res = budget_residual(traj);
    const double scale = std::pow(norm_l2(s0.u), 2);
    for (double r : res) CHECK(std::abs(r) < 1e-10 * scale);

    Params p8 = hydro_params(8);
    p8.alpha = 0.1;
    State r0 = State::zero(8);
    r0.u = random_even(8, 29, 0.5, 2.0, 4);
    StepperConfig cfg2;
    cfg2.dt = 2e-3;
    cfg2.t_end = 0.5;
    Trajectory t2 = run(r0, p8, SystemKind::HydrostaticDamped, cfg2);
    double max_r = 0.0;
    for (double r : budget_residual(t2)) max_r = std::max(max_r, std::abs(r));
    CHECK(max_r < 1e-7 * std::pow(norm_l2(r0.u), 2));
}

TEST_CASE("full-system budget includes the temperature work term") {
    Params p = hydro_params(6);
    p.f0 = 1.0;
    p.kappa = 0.5;
    State s0 = random_state(6, 31, 0.4, 2.0, /*kmax=*/3);
    StepperConfig cfg;
    cfg.dt = 5e-4;
    cfg.t_end = 0.5;
    Trajectory traj = run(s0, p, SystemKind::Primitive, cfg);
    double max_r = 0.0;
    for (double r : budget_residual(traj)) max_r = std::max(max_r, std::abs(r));
    const double scale = std::pow(norm_l2(s0.u), 2) + std::pow(norm_l2(s0.v), 2) +
                         std::pow(norm_l2(s0.T), 2);
    CHECK(max_r < 2e-7 * scale);
    // without the <T, w> work term the balance would miss this much:
    double cross = 0.0;
    for (size_t i = 1; i < traj.energy_series.size(); ++i)
        cross += std::abs(traj.energy_series[i].energy.cross_Tw) *
                 (traj.energy_series[i].t - traj.energy_series[i - 1].t);
    CHECK(max_r < 1e-3 * 2.0 * cross);
}

TEST_CASE("alpha convergence on the zonal closed form has rate 2") {
    Params p = hydro_params(2);
    p.nu = 0.1;
    p.eps1 = 0.05;
    SpectralField u0 = zonal_field(2, 1.0, 1);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.sample_every = 5;
    std::vector<double> alphas = {0.02, 0.01, 0.005};
    ConvergenceResult r = alpha_convergence(u0, p, alphas, 1.0, cfg);

    REQUIRE(r.rate_defined);
    CHECK(r.fitted_rate == doctest::Approx(2.0).epsilon(0.05));

    // closed-form error at the shared sample times
    const double rate = p.nu * kTwoPi * kTwoPi + p.eps1;
    for (size_t i = 0; i < alphas.size(); ++i) {
        const double beta = kTwoPi * kTwoPi * alphas[i] * alphas[i];
        double analytic = 0.0;
        const int nsamp = static_cast<int>(1.0 / (cfg.dt * cfg.sample_every));
        for (int j = 0; j <= nsamp; ++j) {
            const double t = j * cfg.dt * cfg.sample_every;
            analytic = std::max(analytic, std::abs(std::exp(-rate * t / (1.0 + beta)) -
                                                   std::exp(-rate * t)) /
                                              std::sqrt(2.0));
        }
        CHECK(std::abs(r.errors[i] - analytic) < 1e-8 * analytic);
    }

    // monotone envelope: errors shrink as alpha does
    for (size_t i = 1; i < r.errors.size(); ++i)
        CHECK(r.errors[i] <= r.errors[i - 1] * 1.05);
}

TEST_CASE("sweeps give identical results under the thread-count override") {
    Params p = hydro_params(4);
    SpectralField u0 = random_even(4, 99, 0.5);
    StepperConfig cfg;
    cfg.dt = 2e-3;
    std::vector<double> alphas = {0.08, 0.04, 0.02};

    ConvergenceResult serial = alpha_convergence(u0, p, alphas, 0.3, cfg);
    setenv("PGA_THREADS", "4", 1);
    ConvergenceResult parallel = alpha_convergence(u0, p, alphas, 0.3, cfg);
    unsetenv("PGA_THREADS");
    for (size_t i = 0; i < alphas.size(); ++i) CHECK(serial.errors[i] == parallel.errors[i]);
    CHECK(serial.fitted_rate == parallel.fitted_rate);
}

TEST_CASE("alpha convergence flags the zero initial condition") {
    Params p = hydro_params(2);
    SpectralField u0(2, Parity::EvenZ);
    StepperConfig cfg;
    cfg.dt = 1e-2;
    ConvergenceResult r = alpha_convergence(u0, p, {0.1, 0.05}, 0.2, cfg);
    CHECK_FALSE(r.rate_defined);
    for (double e : r.errors) CHECK(e == 0.0);
}

TEST_CASE("alpha convergence requires nu > 0") {
    Params p = hydro_params(2);
    p.nu = 0.0;
    StepperConfig cfg;
    CHECK_THROWS_AS(alpha_convergence(zonal_field(2, 1.0, 1), p, {0.1}, 0.1, cfg),
                    std::invalid_argument);
}

TEST_CASE("blow-up probe on zonal data reproduces alpha^2 ||u0_z||^2") {
    Params p = hydro_params(2);
    SpectralField u0 = zonal_field(2, 1.0, 1);
    SpectralField u0z = differentiate(u0, Axis::Z);
    const double uz2 = std::pow(norm_l2(u0z), 2);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    std::vector<double> alphas = {0.1, 0.05, 0.025, 0.0125};
    BlowupProbeResult r = blowup_probe(u0, p, alphas, 1.0, cfg);

    for (size_t i = 0; i < alphas.size(); ++i)
        CHECK(std::abs(r.B[i] - alphas[i] * alphas[i] * uz2) < 1e-8 * r.B[i]);
    CHECK(std::abs(r.extrapolated_limit) <= 1e-10);
    CHECK(r.verdict == BlowupVerdict::NoBlowupEvidence);
    CHECK_FALSE(r.resolution_failure);
    CHECK(r.fit_exponent == doctest::Approx(2.0));
}

TEST_CASE("blow-up probe on the zero state") {
    Params p = hydro_params(2);
    SpectralField u0(2, Parity::EvenZ);
    StepperConfig cfg;
    cfg.dt = 1e-2;
    BlowupProbeResult r = blowup_probe(u0, p, {0.1, 0.05, 0.025}, 0.2, cfg);
    for (double b : r.B) CHECK(b == 0.0);
    CHECK(r.verdict == BlowupVerdict::NoBlowupEvidence);
}

TEST_CASE("B(alpha) stays below the initial-energy bound on generic data") {
    Params p = hydro_params(8);
    SpectralField u0 = random_even(8, 37, 0.6, 2.0, 4);
    StepperConfig cfg;
    cfg.dt = 2e-3;
    BlowupProbeResult r = blowup_probe(u0, p, {0.1, 0.05, 0.025}, 0.5, cfg);
    CHECK_FALSE(r.resolution_failure);
    const double bound = std::pow(norm_l2(u0), 2) +
                         0.01 * std::pow(sobolev_seminorm(u0, 0, 1), 2);
    for (double b : r.B) CHECK(b <= bound * (1.0 + 1e-10));
}

TEST_CASE("lemma ratios are 1 on constants") {
    GeneralField one = GeneralField::constant(4, 1.0);
    CHECK(lemma1_ratio(one, one, one) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lemma2_ratio(one) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lemma check: ratios are finite and the max stabilizes") {
    LemmaCheckResult a = anisotropic_lemma_check(60, 8, 7);
    LemmaCheckResult b = anisotropic_lemma_check(120, 8, 7);
    CHECK(std::isfinite(a.ratio1_max));
    CHECK(std::isfinite(a.ratio2_max));
    CHECK(a.ratio1_max > 0.0);
    CHECK(b.ratio1_max >= a.ratio1_max);          // same seed prefix, more trials
    CHECK(b.ratio1_max <= a.ratio1_max * 2.0);    // no runaway growth
    CHECK(b.ratio2_max <= a.ratio2_max * 2.0);
}

TEST_CASE("fitted growth constant is stable under refinement") {
    auto fit = [](int m, double dt) {
        Params p;
        p.nu = 0.1;
        p.kappa = 0.5;
        p.eps1 = 0.1;
        p.eps2 = 0.3;
        p.f0 = 1.0;
        p.m = m;
        State s0 = taylor_like_state(m, 0.8, 0.5, 0.5, 1, 1);
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.5;
        return fit_growth_constant(run(s0, p, SystemKind::Primitive, cfg));
    };
    const double c0 = fit(6, 2e-3);
    const double c1 = fit(12, 2e-3);
    const double c2 = fit(6, 1e-3);
    CHECK(std::abs(c1 - c0) <= 0.2 * std::abs(c0));
    CHECK(std::abs(c2 - c0) <= 0.2 * std::abs(c0));
}

TEST_CASE("small-data monotonicity of the offset-free Y") {
    Params p;
    p.nu = 0.1;
    p.kappa = 1.0;
    p.eps1 = 0.1;
    p.eps2 = 1.0;
    p.f0 = 1.0;
    p.m = 8;
    const double threshold =
        std::min(std::min(p.nu * p.nu, p.eps1 * p.eps1),
                 std::min(p.eps2 * p.eps2 / 4.0, p.kappa * p.kappa / 4.0));
    State s0 = random_state(8, 57, 1.0, 2.0, 4);
    const double y0 = energy_functionals(s0).y_offset_free();
    const double scale = std::sqrt(1e-4 * threshold / y0);
    s0.u *= scale;
    s0.v *= scale;
    s0.T *= scale;

    StepperConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 1.0;
    Trajectory traj = run(s0, p, SystemKind::Primitive, cfg);
    for (size_t i = 1; i < traj.energy_series.size(); ++i)
        CHECK(traj.energy_series[i].energy.y_offset_free() <=
              traj.energy_series[i - 1].energy.y_offset_free() * (1.0 + 1e-12));
}

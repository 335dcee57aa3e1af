#include "doctest.h"

#include <complex>

#include "helpers.hpp"
#include "wigsmooth/tdse.hpp"

using namespace wigsmooth;

namespace {

// paper's soft-core softening: V(x) = -1/sqrt(0.67 + x^2)
const double kPaperBeta = std::sqrt(0.67);

// Test-side oracle: imaginary-time relaxation with backward-Euler steps and a
// plain (unpivoted) Thomas solve, Rayleigh-quotient energy. Independent of
// the Sturm-bisection path used by ground_state.
double imaginary_time_energy(const SoftCoreSpec& sc, const Axis& ax) {
    const std::size_t n = ax.n;
    const double dx = ax.spacing();
    // tau must keep 1 + tau*E0 positive or an excited state dominates the
    // backward-Euler power iteration
    const double tau = 0.5;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = sc.value(ax[i]);
    const double off = -tau * 0.5 / (dx * dx);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = 1.0 + tau * (1.0 / (dx * dx) + v[i]);

    std::vector<double> psi(n), cp(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = std::exp(-0.4 * std::fabs(ax[i]));

    auto rayleigh = [&]() {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double hpsi = (1.0 / (dx * dx) + v[i]) * psi[i];
            if (i > 0) hpsi -= 0.5 * psi[i - 1] / (dx * dx);
            if (i + 1 < n) hpsi -= 0.5 * psi[i + 1] / (dx * dx);
            num += psi[i] * hpsi;
            den += psi[i] * psi[i];
        }
        return num / den;
    };

    double e_prev = 1e300;
    for (int it = 0; it < 20000; ++it) {
        rhs = psi;
        cp[0] = off / diag[0];
        rhs[0] /= diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = diag[i] - off * cp[i - 1];
            cp[i] = off / m;
            rhs[i] = (rhs[i] - off * rhs[i - 1]) / m;
        }
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
        double nrm = 0.0;
        for (double y : rhs) nrm += y * y;
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) psi[i] = rhs[i] / nrm;
        if (it % 10 == 9) {
            const double e = rayleigh();
            if (std::fabs(e - e_prev) < 1e-13) return e;
            e_prev = e;
        }
    }
    return rayleigh();
}

double richardson_imaginary_time(const SoftCoreSpec& sc, const Axis& ax) {
    const double e1 = imaginary_time_energy(sc, ax);
    const double e2 = imaginary_time_energy(sc, Axis(ax.min, ax.max, 2 * ax.n - 1));
    const double e3 = imaginary_time_energy(sc, Axis(ax.min, ax.max, 4 * ax.n - 3));
    const double r12 = (4.0 * e2 - e1) / 3.0;
    const double r23 = (4.0 * e3 - e2) / 3.0;
    return (16.0 * r23 - r12) / 15.0;
}

}  // namespace

TEST_CASE("soft-core potential shape") {
    SoftCoreSpec sc(0.5);
    CHECK(sc.value(0.0) == doctest::Approx(-2.0));
    CHECK(sc.value(1e6) > -1e-5);
    CHECK(sc.value(3.0) < 0.0);
    CHECK(sc.value(-3.0) == doctest::Approx(sc.value(3.0)));
    // gradient matches a finite difference
    const double fd = (sc.value(1.2 + 1e-6) - sc.value(1.2 - 1e-6)) / 2e-6;
    CHECK(sc.gradient(1.2) == doctest::Approx(fd).epsilon(1e-8));
    CHECK_THROWS_AS(SoftCoreSpec(0.0), config_error);
}

TEST_CASE("pulse envelopes stay bounded by the peak field") {
    PulseSpec flat(0.1, 0.2, 8.0 * 2.0 * M_PI / 0.2, 100.0, PulseSpec::Envelope::flat_top, 1.5);
    PulseSpec gauss(0.1, 0.2, 50.0, 100.0);
    for (int i = 0; i <= 4000; ++i) {
        const double t = 0.05 * i;
        CHECK(std::fabs(flat.field(t)) <= 0.1 * (1.0 + 1e-12));
        CHECK(std::fabs(gauss.field(t)) <= 0.1 * (1.0 + 1e-12));
    }
    CHECK(flat.field(flat.window_start() - 1.0) == 0.0);
    CHECK(flat.ponderomotive_energy() == doctest::Approx(0.1 * 0.1 / (4.0 * 0.04)));
    CHECK_THROWS_AS(PulseSpec(-0.1, 0.2, 10.0, 0.0), config_error);
    CHECK_THROWS_AS(PulseSpec(0.1, 0.2, 10.0, 0.0, PulseSpec::Envelope::flat_top, 50.0),
                    config_error);
}

TEST_CASE("ground state energy matches the imaginary-time oracle and the Ne target") {
    SoftCoreSpec sc(kPaperBeta);
    Axis ax(-100.0, 100.0, 2001);
    auto gs = ground_state(sc, ax);

    CHECK(std::fabs(gs.energy - (-0.79)) <= 0.01);
    CHECK(gs.energy == doctest::Approx(richardson_imaginary_time(sc, ax)).epsilon(1e-7));

    CHECK(gs.psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    double sym = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < ax.n; ++i) {
        sym = std::max(sym, std::abs(gs.psi.values[i] - gs.psi.values[ax.n - 1 - i]));
        mx = std::max(mx, std::abs(gs.psi.values[i]));
        CHECK(gs.psi.values[i].real() >= 0.0);
    }
    CHECK(sym <= 1e-10);
    CHECK(std::abs(gs.psi.values.front()) <= 1e-10 * mx);
}

TEST_CASE("ground state energy is stable under grid halving") {
    SoftCoreSpec sc(kPaperBeta);
    auto e_coarse = ground_state(sc, Axis(-100.0, 100.0, 2001)).energy;  // dx = 0.1
    auto e_fine = ground_state(sc, Axis(-100.0, 100.0, 4001)).energy;    // dx = 0.05
    CHECK(std::fabs(e_coarse - e_fine) < 1e-6);
}

TEST_CASE("wide soft core approaches the harmonic-expansion energy") {
    // V ~ -1/beta + x^2/(2 beta^3): ground energy -1/beta + beta^{-3/2}/2
    auto gs = ground_state(SoftCoreSpec(100.0), Axis(-400.0, 400.0, 3201));
    CHECK(std::fabs(gs.energy - (-0.01 + 0.5 * std::pow(100.0, -1.5))) <= 1e-4);
}

TEST_CASE("too narrow an axis is rejected") {
    CHECK_THROWS_AS(ground_state(SoftCoreSpec(kPaperBeta), Axis(-10.0, 10.0, 201)),
                    numerical_error);
}

TEST_CASE("zero field: stationary ground state") {
    SoftCoreSpec sc(kPaperBeta);
    Axis ax(-100.0, 100.0, 2001);
    auto gs = ground_state(sc, ax);
    auto pot = SampledPotential::from(sc, ax);
    PropagationConfig cfg(ax, 0.05, 0.0, 1000.0, 0.0, 50);
    auto rec = propagate(gs.psi, pot, PulseSpec(0.0, 0.057, 100.0, 0.0), cfg);

    double dmax = 0.0;
    for (double d : rec.ddot_d) dmax = std::max(dmax, std::fabs(d));
    CHECK(dmax <= 1e-8);

    std::complex<double> ov = 0.0;
    for (std::size_t i = 0; i < ax.n; ++i) {
        const double w = (i == 0 || i + 1 == ax.n) ? 0.5 : 1.0;
        ov += w * std::conj(rec.psi_final.values[i]) * gs.psi.values[i];
    }
    ov *= ax.spacing();
    CHECK(std::abs(ov) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("unitarity without absorber: norm drift below 1e-10 per step") {
    SoftCoreSpec sc(kPaperBeta);
    Axis ax(-60.0, 60.0, 1201);
    auto gs = ground_state(sc, ax);
    auto pot = SampledPotential::from(sc, ax);
    PropagationConfig cfg(ax, 0.05, 0.0, 25.0, 0.0, 1);
    auto rec = propagate(gs.psi, pot, PulseSpec(0.0, 0.057, 100.0, 0.0), cfg);
    for (std::size_t k = 1; k < rec.norm_history.size(); ++k)
        CHECK(std::fabs(rec.norm_history[k] - rec.norm_history[k - 1]) < 1e-10);
}

TEST_CASE("free gaussian packet drifts at its central-difference momentum") {
    Axis ax(-100.0, 100.0, 2001);
    auto wf = testutil::gaussian_packet(ax, 0.0, 0.2, 5.0);
    auto pot = SampledPotential::zero(ax);
    PropagationConfig cfg(ax, 0.01, 0.0, 10.0, 0.0, 100);
    auto rec = propagate(wf, pot, PulseSpec(0.0, 1.0, 10.0, 0.0), cfg);

    // <p> via the central-difference operator, matching the propagator's
    // discrete dispersion
    const double dx = ax.spacing();
    double pexp = 0.0;
    for (std::size_t i = 1; i + 1 < ax.n; ++i) {
        const std::complex<double> d = (wf.values[i + 1] - wf.values[i - 1]) / (2.0 * dx);
        pexp += (std::conj(wf.values[i]) * d).imag();
    }
    pexp *= dx;

    double dmax = 0.0;
    for (double d : rec.ddot_d) dmax = std::max(dmax, std::fabs(d));
    CHECK(dmax <= 1e-8);
    const double drift = rec.x_expect.back() - rec.x_expect.front();
    CHECK(std::fabs(drift - pexp * 10.0) <= 1e-6);
}

TEST_CASE("second-order convergence in dt") {
    SoftCoreSpec sc(kPaperBeta);
    Axis ax(-60.0, 60.0, 1201);
    auto gs = ground_state(sc, ax);
    auto pot = SampledPotential::from(sc, ax);
    PulseSpec pl(0.05, 0.25, 8.0 * 2.0 * M_PI / 0.25, 40.0);
    auto x_final = [&](double dt) {
        PropagationConfig cfg(ax, dt, 0.0, 80.0, 0.0, 1);
        return propagate(gs.psi, pot, pl, cfg).x_expect.back();
    };
    const double ref = x_final(0.0125);
    const double e1 = std::fabs(x_final(0.1) - ref);
    const double e2 = std::fabs(x_final(0.05) - ref);
    CHECK(e1 / e2 >= 3.4);
    CHECK(e1 / e2 <= 4.6);
}

TEST_CASE("recorded dipole acceleration matches the second difference of <x>") {
    // needs dx fine enough that the discrete-Laplacian dispersion stays
    // below the tolerance; dx = 0.05 here
    SoftCoreSpec sc(kPaperBeta);
    Axis ax(-80.0, 80.0, 3201);
    auto gs = ground_state(sc, ax);
    auto pot = SampledPotential::from(sc, ax);
    const double omega = 0.2, period = 2.0 * M_PI / omega;
    PulseSpec pl(0.01, omega, 3.0 * period, 1.5 * period, PulseSpec::Envelope::flat_top, 1.0);
    PropagationConfig cfg(ax, 0.05, 0.0, 3.0 * period, 0.0, 1);
    auto rec = propagate(gs.psi, pot, pl, cfg);

    double dmax = 0.0;
    for (double d : rec.ddot_d) dmax = std::max(dmax, std::fabs(d));
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < rec.times.size(); ++k) {
        const double sd = (rec.x_expect[k + 1] - 2.0 * rec.x_expect[k] + rec.x_expect[k - 1]) /
                          (cfg.dt * cfg.dt);
        worst = std::max(worst, std::fabs(sd - rec.ddot_d[k]));
    }
    CHECK(worst <= 1e-3 * dmax);
}

TEST_CASE("propagation failure and validation paths") {
    Axis ax(-10.0, 10.0, 101);
    auto wf = testutil::gaussian_packet(ax, 0.0, 0.0, 1.0);

    CHECK_THROWS_AS(PropagationConfig(ax, -0.1, 0.0, 1.0), config_error);
    CHECK_THROWS_AS(PropagationConfig(ax, 0.1, 2.0, 1.0), config_error);
    CHECK_THROWS_AS(PropagationConfig(ax, 0.1, 0.0, 1.0, 6.0), config_error);
    CHECK_THROWS_AS(PropagationConfig(ax, 0.1, 0.0, 1.0, 0.0, 0), config_error);

    // dt heuristic warning fires for dt > 0.2 dx^2
    CHECK_FALSE(PropagationConfig(ax, 0.05, 0.0, 1.0).warnings().empty());
    CHECK(PropagationConfig(ax, 0.005, 0.0, 1.0).warnings().empty());

    // unnormalized initial state
    auto bad = wf;
    for (auto& z : bad.values) z *= 2.0;
    CHECK_THROWS_AS(
        propagate(bad, SampledPotential::zero(ax), PulseSpec(0.0, 1.0, 1.0, 0.0),
                  PropagationConfig(ax, 0.01, 0.0, 0.1)),
        config_error);

    // an overflowing potential surfaces as a NaN diagnostic
    SampledPotential blow = SampledPotential::zero(ax);
    for (auto& v : blow.v) v = HUGE_VAL;
    CHECK_THROWS_AS(propagate(wf, blow, PulseSpec(0.0, 1.0, 1.0, 0.0),
                              PropagationConfig(ax, 0.01, 0.0, 0.1)),
                    numerical_error);
}

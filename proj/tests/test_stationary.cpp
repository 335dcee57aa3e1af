#include "doctest.h"

#include "wigsmooth/stationary.hpp"

using namespace wigsmooth;

TEST_CASE("square well eigenfunctions: values, boundaries, norm") {
    SquareWellSpec spec(10.0, 1.0, 1.0, 1);
    // 0.25 spacing is exact in binary, so +-a land exactly on grid points
    Axis ax(-16.0, 16.0, 129);
    auto wf = square_well_wavefunction(spec, ax);

    const std::size_t center = ax.nearest(0.0);
    CHECK(wf.values[center].real() == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-4));
    CHECK(wf.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));

    for (std::size_t i = 0; i < ax.n; ++i)
        if (std::fabs(ax[i]) >= 10.0) CHECK(std::abs(wf.values[i]) == 0.0);

    CHECK_THROWS_AS(square_well_wavefunction(spec, Axis(-5.0, 5.0, 41)), config_error);
}

TEST_CASE("fifth eigenstate has exactly five density maxima") {
    SquareWellSpec spec(10.0, 1.0, 1.0, 5);
    Axis ax(-12.0, 12.0, 961);
    auto wf = square_well_wavefunction(spec, ax);

    int maxima = 0;
    for (std::size_t i = 1; i + 1 < ax.n; ++i) {
        const double d0 = std::norm(wf.values[i - 1]);
        const double d1 = std::norm(wf.values[i]);
        const double d2 = std::norm(wf.values[i + 1]);
        if (d1 > d0 && d1 > d2 && d1 > 1e-6) ++maxima;
    }
    CHECK(maxima == 5);
}

TEST_CASE("square well energies increase with the index") {
    double prev = 0.0;
    for (int n = 1; n <= 6; ++n) {
        SquareWellSpec spec(10.0, 1.0, 1.0, n);
        CHECK(spec.energy() > prev);
        prev = spec.energy();
    }
    CHECK(SquareWellSpec(10.0, 1.0, 1.0, 5).wavenumber() == doctest::Approx(0.7853981633974483));
    CHECK_THROWS_AS(SquareWellSpec(10.0, 1.0, 1.0, 0), config_error);
}

TEST_CASE("step potential matching at the paper's parameters") {
    StepPotentialSpec spec(1.0, 0.5, 1.0, 1.0);
    CHECK(spec.incident_wavenumber() == doctest::Approx(1.0));
    CHECK(spec.evanescent_rate() == doctest::Approx(1.0));

    const auto R = step_reflection_amplitude(spec);
    const auto T = step_transmission_amplitude(spec);
    CHECK(std::abs(R) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::norm(T) == doctest::Approx(2.0).epsilon(1e-14));

    // continuity of psi and psi' at q = 0 follows from 1 + R = T and
    // ik(1 - R) = -kappa T
    const std::complex<double> I(0.0, 1.0);
    CHECK(std::abs(1.0 + R - T) < 1e-14);
    CHECK(std::abs(I * spec.incident_wavenumber() * (1.0 - R) - (-spec.evanescent_rate() * T)) <
          1e-14);
}

TEST_CASE("total reflection below the barrier for any energy") {
    for (double e : {0.05, 0.2, 0.5, 0.8, 0.99}) {
        StepPotentialSpec spec(1.0, e, 1.0, 1.0);
        CHECK(std::abs(step_reflection_amplitude(spec)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("evanescent density decays with log-slope -2") {
    StepPotentialSpec spec(1.0, 0.5, 1.0, 1.0);
    Axis ax(-40.0, 26.0, 661);
    auto wf = step_wavefunction(spec, ax);
    // fit ln|psi|^2 over 0.5 <= q <= 3
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < ax.n; ++i) {
        const double q = ax[i];
        if (q < 0.5 || q > 3.0) continue;
        const double y = std::log(std::norm(wf.values[i]));
        sx += q; sy += y; sxx += q * q; sxy += q * y;
        ++cnt;
    }
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.01));
}

TEST_CASE("step potential rejects the degenerate energy and bad axes") {
    CHECK_THROWS_AS(step_wavefunction(StepPotentialSpec(1.0, 1.0, 1.0, 1.0), Axis(-5, 5, 11)),
                    config_error);
    CHECK_THROWS_AS(step_wavefunction(StepPotentialSpec(1.0, 0.5, 1.0, 1.0), Axis(1.0, 5.0, 11)),
                    config_error);
}

TEST_CASE("transmitted branch above the barrier") {
    StepPotentialSpec spec(1.0, 2.0, 1.0, 1.0);
    const auto R = step_reflection_amplitude(spec);
    const auto T = step_transmission_amplitude(spec);
    const double k = spec.incident_wavenumber();
    const double k2 = std::sqrt(2.0 * (2.0 - 1.0));
    CHECK(R.real() == doctest::Approx((k - k2) / (k + k2)));
    CHECK(std::abs(1.0 + R - T) < 1e-14);

    Axis ax(-20.0, 20.0, 401);
    auto wf = step_wavefunction(spec, ax);
    // transmitted side has uniform density |T|^2
    for (std::size_t i = ax.nearest(1.0); i < ax.n; ++i)
        CHECK(std::norm(wf.values[i]) == doctest::Approx(std::norm(T)).epsilon(1e-12));
}

#pragma once

#include <cmath>
#include <complex>

#include "wigsmooth/errors.hpp"
#include "wigsmooth/wavefunction.hpp"

namespace wigsmooth {

/// Symmetric infinite square well on [-a, a].
struct SquareWellSpec {
    double half_width = 10.0;  // a
    double mass = 1.0;
    double hbar = 1.0;
    int n = 1;  // eigenstate index, 1-based

    SquareWellSpec() = default;
    SquareWellSpec(double a, double m, double hb, int n_) : half_width(a), mass(m), hbar(hb), n(n_) {
        if (!(half_width > 0.0) || !(mass > 0.0) || !(hbar > 0.0))
            throw config_error("SquareWellSpec: a, m, hbar must be positive");
        if (n < 1) throw config_error("SquareWellSpec: eigenstate index starts at 1");
    }

    double wavenumber() const { return static_cast<double>(n) * M_PI / (2.0 * half_width); }
    double energy() const {
        const double k = wavenumber();
        return hbar * hbar * k * k / (2.0 * mass);
    }
};

/// psi_n(q) = cos(n pi q / 2a)/sqrt(a) for odd n, sin(...)/sqrt(a) for even n,
/// identically zero outside the well. The sampled vector is renormalized to
/// unit trapezoidal norm.
inline WavefunctionGrid square_well_wavefunction(const SquareWellSpec& spec, const Axis& axis) {
    const double a = spec.half_width;
    if (axis.min > -a || axis.max < a)
        throw config_error("square_well_wavefunction: axis must span [-a, a]");
    const double k = spec.wavenumber();
    const double amp = 1.0 / std::sqrt(a);
    const bool odd_index = spec.n % 2 == 1;

    std::vector<std::complex<double>> psi(axis.n);
    for (std::size_t i = 0; i < axis.n; ++i) {
        const double q = axis[i];
        if (std::fabs(q) >= a)
            psi[i] = 0.0;
        else
            psi[i] = amp * (odd_index ? std::cos(k * q) : std::sin(k * q));
    }
    WavefunctionGrid wf(axis, std::move(psi));
    wf.normalize();
    return wf;
}

/// Potential step of height V0 at q = 0 with incident energy E.
struct StepPotentialSpec {
    double v0 = 1.0;
    double energy = 0.5;
    double mass = 1.0;
    double hbar = 1.0;

    StepPotentialSpec() = default;
    StepPotentialSpec(double v0_, double e, double m, double hb)
        : v0(v0_), energy(e), mass(m), hbar(hb) {
        if (!(v0 > 0.0) || !(energy > 0.0) || !(mass > 0.0) || !(hbar > 0.0))
            throw config_error("StepPotentialSpec: V0, E, m, hbar must be positive");
    }

    double incident_wavenumber() const { return std::sqrt(2.0 * mass * energy) / hbar; }
    /// Evanescent decay rate for E < V0.
    double evanescent_rate() const {
        if (energy >= v0) throw config_error("StepPotentialSpec: evanescent rate requires E < V0");
        return std::sqrt(2.0 * mass * (v0 - energy)) / hbar;
    }
};

inline std::complex<double> step_reflection_amplitude(const StepPotentialSpec& spec) {
    const double k = spec.incident_wavenumber();
    if (spec.energy < spec.v0) {
        const std::complex<double> ike(0.0, spec.evanescent_rate());
        return (k - ike) / (k + ike);
    }
    const double k2 = std::sqrt(2.0 * spec.mass * (spec.energy - spec.v0)) / spec.hbar;
    return std::complex<double>((k - k2) / (k + k2), 0.0);
}

inline std::complex<double> step_transmission_amplitude(const StepPotentialSpec& spec) {
    const double k = spec.incident_wavenumber();
    if (spec.energy < spec.v0) {
        const std::complex<double> ike(0.0, spec.evanescent_rate());
        return 2.0 * k / (k + ike);
    }
    const double k2 = std::sqrt(2.0 * spec.mass * (spec.energy - spec.v0)) / spec.hbar;
    return std::complex<double>(2.0 * k / (k + k2), 0.0);
}

/// Scattering state with unit incident amplitude. Non-normalizable, so no
/// renormalization is applied. psi and psi' are continuous at q = 0 by
/// construction of R and T.
inline WavefunctionGrid step_wavefunction(const StepPotentialSpec& spec, const Axis& axis) {
    if (std::fabs(spec.energy - spec.v0) < 1e-12 * spec.v0)
        throw config_error("step_wavefunction: E = V0 is degenerate and unsupported");
    if (!(axis.min < 0.0) || !(axis.max > 0.0))
        throw config_error("step_wavefunction: axis must include q = 0");

    const double k = spec.incident_wavenumber();
    const std::complex<double> R = step_reflection_amplitude(spec);
    const std::complex<double> T = step_transmission_amplitude(spec);
    const std::complex<double> I(0.0, 1.0);
    const bool below = spec.energy < spec.v0;
    const double kappa_or_k2 =
        below ? spec.evanescent_rate()
              : std::sqrt(2.0 * spec.mass * (spec.energy - spec.v0)) / spec.hbar;

    std::vector<std::complex<double>> psi(axis.n);
    for (std::size_t i = 0; i < axis.n; ++i) {
        const double q = axis[i];
        if (q < 0.0)
            psi[i] = std::exp(I * k * q) + R * std::exp(-I * k * q);
        else
            psi[i] = below ? T * std::exp(-kappa_or_k2 * q) : T * std::exp(I * kappa_or_k2 * q);
    }
    return WavefunctionGrid(axis, std::move(psi));
}

}  // namespace wigsmooth

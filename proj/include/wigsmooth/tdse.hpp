#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "wigsmooth/axis.hpp"
#include "wigsmooth/errors.hpp"
#include "wigsmooth/pulse.hpp"
#include "wigsmooth/wavefunction.hpp"

namespace wigsmooth {

/// Soft-core model potential V(x) = -1 / sqrt(beta^2 + x^2).
struct SoftCoreSpec {
    double beta = 0.67;

    SoftCoreSpec() = default;
    explicit SoftCoreSpec(double b) : beta(b) {
        if (!(beta > 0.0)) throw config_error("SoftCoreSpec: beta must be positive");
    }

    double value(double x) const { return -1.0 / std::sqrt(beta * beta + x * x); }
    double gradient(double x) const {
        const double d = beta * beta + x * x;
        return x / (d * std::sqrt(d));
    }
};

/// Potential sampled on a grid together with its spatial derivative (the
/// derivative feeds the Ehrenfest dipole acceleration).
struct SampledPotential {
    std::vector<double> v;
    std::vector<double> dv;

    static SampledPotential from(const SoftCoreSpec& spec, const Axis& axis) {
        SampledPotential p;
        p.v.resize(axis.n);
        p.dv.resize(axis.n);
        for (std::size_t i = 0; i < axis.n; ++i) {
            p.v[i] = spec.value(axis[i]);
            p.dv[i] = spec.gradient(axis[i]);
        }
        return p;
    }

    static SampledPotential zero(const Axis& axis) {
        SampledPotential p;
        p.v.assign(axis.n, 0.0);
        p.dv.assign(axis.n, 0.0);
        return p;
    }
};

namespace detail {

// Thomas algorithm for a complex tridiagonal system with constant
// off-diagonals. Diagonal dominance holds for the Crank-Nicolson matrices
// used here, so no pivoting.
inline void thomas_const_offdiag(const std::vector<std::complex<double>>& diag,
                                 std::complex<double> off,
                                 std::vector<std::complex<double>>& rhs,
                                 std::vector<std::complex<double>>& scratch) {
    const std::size_t n = diag.size();
    scratch.resize(n);
    std::complex<double> piv = diag[0];
    scratch[0] = off / piv;
    rhs[0] /= piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = diag[i] - off * scratch[i - 1];
        scratch[i] = off / piv;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
}

// Number of eigenvalues of the symmetric tridiagonal (diag, const off) below
// lambda, via the Sturm pivot sign count.
inline std::size_t sturm_count_below(const std::vector<double>& diag, double off, double lambda) {
    std::size_t count = 0;
    const double off2 = off * off;
    double q = 0.0;
    bool first = true;
    for (double d : diag) {
        if (first) {
            q = d - lambda;
            first = false;
        } else {
            if (q == 0.0) q = 1e-300;
            q = (d - lambda) - off2 / q;
        }
        if (q < 0.0) ++count;
    }
    return count;
}

// Lowest eigenvalue of the symmetric tridiagonal by bisection.
inline double lowest_eigenvalue(const std::vector<double>& diag, double off) {
    double lo = diag[0], hi = diag[0];
    for (double d : diag) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    lo -= 2.0 * std::fabs(off) + 1.0;
    hi += 2.0 * std::fabs(off) + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (std::fabs(lo) + 1.0); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count_below(diag, off, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Tridiagonal solve with partial pivoting (constant off-diagonals on input);
// used by inverse iteration where the shifted matrix is near singular.
inline std::vector<double> tridiag_solve_pivoted(std::vector<double> a, std::vector<double> b,
                                                 std::vector<double> c, std::vector<double> r) {
    const std::size_t n = b.size();
    std::vector<double> d(n, 0.0);  // second superdiagonal from row swaps
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::fabs(a[i + 1]) > std::fabs(b[i])) {
            std::swap(b[i], a[i + 1]);
            std::swap(c[i], b[i + 1]);
            std::swap(d[i], c[i + 1]);
            std::swap(r[i], r[i + 1]);
        }
        if (b[i] == 0.0) b[i] = 1e-300;
        const double m = a[i + 1] / b[i];
        b[i + 1] -= m * c[i];
        c[i + 1] -= m * d[i];
        r[i + 1] -= m * r[i];
    }
    if (b[n - 1] == 0.0) b[n - 1] = 1e-300;
    std::vector<double> x(n);
    x[n - 1] = r[n - 1] / b[n - 1];
    if (n >= 2) x[n - 2] = (r[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2];
    for (std::size_t i = n - 2; i-- > 0;)
        x[i] = (r[i] - c[i] * x[i + 1] - d[i] * x[i + 2]) / b[i];
    return x;
}

struct EigenResult {
    double energy;
    std::vector<double> psi;  // unit trapezoidal norm, positive
};

// Lowest eigenpair of H = -(1/2) d^2/dx^2 + V on the axis, 3-point Laplacian.
inline EigenResult lowest_eigenpair(const SoftCoreSpec& spec, const Axis& axis) {
    const double dx = axis.spacing();
    const double off = -0.5 / (dx * dx);
    std::vector<double> diag(axis.n);
    for (std::size_t i = 0; i < axis.n; ++i) diag[i] = 1.0 / (dx * dx) + spec.value(axis[i]);

    const double e0 = lowest_eigenvalue(diag, off);

    // inverse iteration at a slightly detuned shift
    const double shift = e0 - 1e-10 * (std::fabs(e0) + 1.0);
    std::vector<double> sub(axis.n, off), sup(axis.n, off), b(axis.n);
    sub[0] = 0.0;
    sup[axis.n - 1] = 0.0;
    std::vector<double> v(axis.n);
    for (std::size_t i = 0; i < axis.n; ++i) v[i] = std::exp(-std::fabs(axis[i]) * 0.3);
    for (int it = 0; it < 4; ++it) {
        for (std::size_t i = 0; i < axis.n; ++i) b[i] = diag[i] - shift;
        v = tridiag_solve_pivoted(sub, b, sup, v);
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : v) x /= nrm;
    }
    double sign_fix = 0.0;
    for (double x : v) sign_fix += x;
    if (sign_fix < 0.0)
        for (double& x : v) x = -x;

    // trapezoidal normalization
    double n2 = 0.0;
    for (std::size_t i = 0; i < axis.n; ++i) {
        const double w = (i == 0 || i + 1 == axis.n) ? 0.5 : 1.0;
        n2 += w * v[i] * v[i];
    }
    const double s = 1.0 / std::sqrt(n2 * dx);
    for (double& x : v) x *= s;
    return {e0, std::move(v)};
}

}  // namespace detail

struct GroundState {
    WavefunctionGrid psi;
    double energy = 0.0;  // Richardson-extrapolated over dx, dx/2, dx/4
};

/// Ground state of the soft-core Hamiltonian on the given axis. The wave
/// function lives on the axis as requested; the energy is extrapolated from
/// eigensolves at dx, dx/2 and dx/4, which pins it to ~1e-8 between
/// successive grid refinements.
inline GroundState ground_state(const SoftCoreSpec& spec, const Axis& axis) {
    const auto base = detail::lowest_eigenpair(spec, axis);
    const Axis half(axis.min, axis.max, 2 * axis.n - 1);
    const Axis quarter(axis.min, axis.max, 4 * axis.n - 3);
    const double e1 = base.energy;
    const double e2 = detail::lowest_eigenpair(spec, half).energy;
    const double e3 = detail::lowest_eigenpair(spec, quarter).energy;
    const double r12 = (4.0 * e2 - e1) / 3.0;
    const double r23 = (4.0 * e3 - e2) / 3.0;
    const double energy = (16.0 * r23 - r12) / 15.0;

    std::vector<std::complex<double>> psi(axis.n);
    double peak = 0.0;
    for (std::size_t i = 0; i < axis.n; ++i) {
        psi[i] = base.psi[i];
        peak = std::max(peak, std::fabs(base.psi[i]));
    }
    if (std::fabs(base.psi.front()) > 1e-10 * peak || std::fabs(base.psi.back()) > 1e-10 * peak)
        throw numerical_error("ground_state: axis too narrow, ground state has not decayed at "
                              "the edges");
    return {WavefunctionGrid(axis, std::move(psi)), energy};
}

/// Grid, step and recording parameters for Crank-Nicolson propagation.
struct PropagationConfig {
    Axis axis;
    double dt = 0.05;
    double t_start = 0.0;
    double t_end = 100.0;
    double absorber_width = 0.0;
    std::size_t record_stride = 1;

    PropagationConfig() = default;
    PropagationConfig(Axis ax, double dt_, double t0, double t1, double absorber = 0.0,
                      std::size_t stride = 1)
        : axis(ax), dt(dt_), t_start(t0), t_end(t1), absorber_width(absorber),
          record_stride(stride) {
        if (!(dt > 0.0)) throw config_error("PropagationConfig: dt must be positive");
        if (!(t_end > t_start)) throw config_error("PropagationConfig: empty time window");
        if (absorber_width < 0.0 || absorber_width >= axis.span() / 4.0)
            throw config_error("PropagationConfig: absorber must be nonnegative and under a "
                               "quarter of the axis span");
        if (record_stride < 1) throw config_error("PropagationConfig: record stride >= 1");
    }

    /// Accuracy heuristics; violations propagate into the run manifest as
    /// warnings, never as errors.
    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        const double dx = axis.spacing();
        if (dt > 0.2 * dx * dx)
            w.push_back("dt exceeds 0.2*dx^2; highest grid modes advance more than ~pi per step");
        return w;
    }
};

/// Uniformly sampled record of the dipole acceleration produced by a
/// propagation, with companions used by tests and manifests.
struct DipoleRecord {
    std::vector<double> times;
    std::vector<double> ddot_d;
    std::vector<double> x_expect;
    std::vector<double> norm_history;
    WavefunctionGrid psi_final;
    PulseSpec pulse;
    Axis axis;
    double dt = 0.0;
    std::size_t record_stride = 1;
};

/// Crank-Nicolson propagation of the length-gauge Hamiltonian
/// H(t) = p^2/2 + V(x) - x E(t) with the field taken at the step midpoint.
/// One tridiagonal solve per step; a multiplicative cos^{1/8} absorber acts
/// on the outer absorber_width of each side after every step. The dipole
/// acceleration is recorded through the Ehrenfest identity
/// ddot d = -<dV/dx> + E(t).
inline DipoleRecord propagate(const WavefunctionGrid& psi0, const SampledPotential& pot,
                              const PulseSpec& pulse, const PropagationConfig& config) {
    const Axis& ax = config.axis;
    const std::size_t n = ax.n;
    if (psi0.axis.n != n || psi0.axis.min != ax.min || psi0.axis.max != ax.max)
        throw config_error("propagate: psi0 axis does not match the configured grid");
    if (pot.v.size() != n || pot.dv.size() != n)
        throw config_error("propagate: potential samples do not match the grid");
    if (std::fabs(psi0.norm_squared() - 1.0) > 1e-6)
        throw config_error("propagate: psi0 must have unit norm");

    const double dx = ax.spacing();
    const double dt = config.dt;
    const auto x = ax.samples();
    const auto nsteps = static_cast<std::size_t>(
        std::llround((config.t_end - config.t_start) / dt));

    // absorber mask
    std::vector<double> mask(n, 1.0);
    bool has_absorber = config.absorber_width > 0.0;
    if (has_absorber) {
        const double w = config.absorber_width;
        const double lo = ax.min + w, hi = ax.max - w;
        for (std::size_t i = 0; i < n; ++i) {
            double depth = 0.0;
            if (x[i] < lo) depth = lo - x[i];
            if (x[i] > hi) depth = x[i] - hi;
            if (depth > 0.0) {
                const double c = std::cos(0.5 * M_PI * std::min(depth / w, 1.0));
                mask[i] = std::pow(std::max(c, 0.0), 0.125);
            }
        }
    }

    const std::complex<double> off(0.0, -0.25 * dt / (dx * dx));  // i dt/2 * (-1/2dx^2)
    const double kin_diag = 1.0 / (dx * dx);

    std::vector<std::complex<double>> psi = psi0.values;
    std::vector<std::complex<double>> diag(n), rhs(n), scratch(n);

    DipoleRecord rec;
    rec.pulse = pulse;
    rec.axis = ax;
    rec.dt = dt;
    rec.record_stride = config.record_stride;

    auto trapz_weight = [n](std::size_t i) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; };
    auto record = [&](std::size_t step) {
        const double t = config.t_start + static_cast<double>(step) * dt;
        double nr = 0.0, xe = 0.0, dv = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dens = std::norm(psi[i]) * trapz_weight(i);
            nr += dens;
            xe += dens * x[i];
            dv += dens * pot.dv[i];
        }
        nr *= dx;
        rec.times.push_back(t);
        rec.ddot_d.push_back(-dv * dx + pulse.field(t));
        rec.x_expect.push_back(xe * dx);
        rec.norm_history.push_back(nr);
    };

    record(0);
    for (std::size_t step = 0; step < nsteps; ++step) {
        const double t_mid = config.t_start + (static_cast<double>(step) + 0.5) * dt;
        const double field = pulse.field(t_mid);
        for (std::size_t i = 0; i < n; ++i) {
            const std::complex<double> h_diag(kin_diag + pot.v[i] - x[i] * field, 0.0);
            diag[i] = 1.0 + std::complex<double>(0.0, 0.5 * dt) * h_diag;
        }
        // rhs = (1 - i dt/2 H) psi = 2 psi - (1 + i dt/2 H) psi
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> apply = diag[i] * psi[i];
            if (i > 0) apply += off * psi[i - 1];
            if (i + 1 < n) apply += off * psi[i + 1];
            rhs[i] = 2.0 * psi[i] - apply;
        }
        detail::thomas_const_offdiag(diag, off, rhs, scratch);
        psi.swap(rhs);

        // norm watchdog before absorption
        double nr = 0.0;
        for (std::size_t i = 0; i < n; ++i) nr += std::norm(psi[i]) * trapz_weight(i);
        nr *= dx;
        if (std::isnan(nr))
            throw numerical_error("propagate: NaN detected at step " + std::to_string(step + 1));
        if (nr > 1.001)
            throw numerical_error("propagate: norm explosion (" + std::to_string(nr) +
                                  ") at step " + std::to_string(step + 1) +
                                  ", t = " + std::to_string(config.t_start + (step + 1) * dt));

        if (has_absorber)
            for (std::size_t i = 0; i < n; ++i) psi[i] *= mask[i];

        if ((step + 1) % config.record_stride == 0) record(step + 1);
    }
    rec.psi_final = WavefunctionGrid(ax, std::move(psi));
    return rec;
}

}  // namespace wigsmooth

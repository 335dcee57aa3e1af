#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "wigsmooth/axis.hpp"
#include "wigsmooth/errors.hpp"
#include "wigsmooth/fft.hpp"
#include "wigsmooth/field.hpp"
#include "wigsmooth/tdse.hpp"
#include "wigsmooth/wigner.hpp"

namespace wigsmooth {

/// Uniformly sampled real time series (dipole acceleration).
struct Signal {
    std::vector<double> times;
    std::vector<double> values;

    Signal() = default;
    Signal(std::vector<double> t, std::vector<double> v)
        : times(std::move(t)), values(std::move(v)) {
        if (times.size() != values.size() || times.size() < 2)
            throw config_error("Signal: need matching times/values with at least 2 samples");
        const double dt = times[1] - times[0];
        if (!(dt > 0.0)) throw config_error("Signal: times must increase");
        for (std::size_t i = 1; i < times.size(); ++i) {
            if (std::fabs(times[i] - times[i - 1] - dt) > 1e-9 * (std::fabs(dt) + 1.0))
                throw config_error("Signal: non-uniform stride");
            if (!std::isfinite(values[i]))
                throw numerical_error("Signal: non-finite sample");
        }
    }

    static Signal from_dipole(const DipoleRecord& rec) { return Signal(rec.times, rec.ddot_d); }

    double stride() const { return times[1] - times[0]; }
};

enum class WvPath { automatic, direct, czt };

namespace detail {

inline std::vector<std::size_t> map_signal_indices(const Axis& t_axis, const Signal& sig) {
    std::vector<std::size_t> idx(t_axis.n);
    const double dt = sig.stride();
    for (std::size_t i = 0; i < t_axis.n; ++i) {
        const double t = (t_axis[i] - sig.times.front()) / dt;
        const double r = std::round(t);
        if (r < 0.0 || r >= static_cast<double>(sig.times.size()) || std::fabs(t - r) > 1e-6)
            throw config_error("wigner_ville: output time sample does not lie on the signal grid");
        idx[i] = static_cast<std::size_t>(r);
    }
    return idx;
}

}  // namespace detail

/// Per-column symmetric lag counts available inside the record (columns whose
/// window is clipped by the record edge carry truncation artifacts).
inline std::vector<std::size_t> wigner_ville_lag_counts(const Signal& signal, const Axis& t_axis) {
    auto idx = detail::map_signal_indices(t_axis, signal);
    std::vector<std::size_t> counts(t_axis.n);
    for (std::size_t i = 0; i < t_axis.n; ++i)
        counts[i] = std::min(idx[i], signal.times.size() - 1 - idx[i]);
    return counts;
}

/// Discrete Wigner-Ville distribution of a real signal:
/// W(t,w) = (dt/pi) sum_k e^{-2 i w tau_k} d(t-tau_k) d(t+tau_k)
/// over the symmetric lag window available at each t (zero outside the
/// record). Real by the symmetric-pair arrangement. The chirp-z path
/// evaluates the lag sum with one transform per time column and matches the
/// direct summation to ~1e-12.
inline DistributionField wigner_ville(const Signal& signal, const Axis& t_axis,
                                      const Axis& omega_axis, WvPath path = WvPath::automatic) {
    const double dt = signal.stride();
    const double wmax = std::max(std::fabs(omega_axis.min), std::fabs(omega_axis.max));
    if (2.0 * wmax * dt >= M_PI)
        throw numerical_error("wigner_ville: omega range violates the lag Nyquist bound "
                              "pi/(2 stride)");
    const auto idx = detail::map_signal_indices(t_axis, signal);
    const auto w = omega_axis.samples();
    const double scale = dt / M_PI;

    DistributionField out(t_axis, omega_axis);
    std::vector<double> c;
    std::vector<cplx> lag;
    for (std::size_t row = 0; row < t_axis.n; ++row) {
        const std::size_t i = idx[row];
        const std::size_t lag_count = std::min(i, signal.times.size() - 1 - i);
        c.assign(lag_count + 1, 0.0);
        for (std::size_t k = 0; k <= lag_count; ++k)
            c[k] = signal.values[i - k] * signal.values[i + k];

        const bool use_czt = path == WvPath::automatic
                                 ? (lag_count > 256 && omega_axis.n > 32)
                                 : path == WvPath::czt;
        if (use_czt) {
            lag.assign(c.size(), cplx(0.0));
            for (std::size_t k = 0; k < c.size(); ++k) lag[k] = cplx(c[k], 0.0);
            auto cols = czt(lag, omega_axis.n, -2.0 * omega_axis.min * dt,
                            -2.0 * omega_axis.spacing() * dt);
            for (std::size_t j = 0; j < omega_axis.n; ++j)
                out(row, j) = scale * (2.0 * cols[j].real() - c[0]);
        } else {
            for (std::size_t j = 0; j < omega_axis.n; ++j) {
                detail::PhasorWalk ph(0.0L, -2.0L * static_cast<long double>(w[j]) * dt);
                double acc = c[0];
                for (std::size_t k = 1; k <= lag_count; ++k) {
                    ph.advance();
                    acc += 2.0 * c[k] * ph.cos_value();
                }
                out(row, j) = scale * acc;
            }
        }
    }
    return out;
}

/// Husimi time-frequency distribution (Gaussian-windowed spectrogram):
/// H(t,w) = (1/2pi) sqrt(kappa/pi) |sum_m e^{-kappa (tau_m - t)^2/2}
///          e^{-i w tau_m} d(tau_m) dt|^2.
/// Equals Gaussian smoothing of the Wigner-Ville field with
/// sigma_t = sqrt(1/2 kappa), sigma_w = sqrt(kappa/2).
inline DistributionField husimi_tf(const Signal& signal, double kappa, const Axis& t_axis,
                                   const Axis& omega_axis) {
    if (!(kappa > 0.0)) throw config_error("husimi_tf: kappa must be positive");
    const double dt = signal.stride();
    const double wmax = std::max(std::fabs(omega_axis.min), std::fabs(omega_axis.max));
    if (wmax * dt >= M_PI)
        throw numerical_error("husimi_tf: omega range violates the sampling Nyquist bound");

    const double sigma_w = 1.0 / std::sqrt(kappa);  // window std in time
    const double half = 8.0 * sigma_w;
    const double pref = std::sqrt(kappa / M_PI) / (2.0 * M_PI);
    const auto w = omega_axis.samples();
    const double t0 = signal.times.front();

    DistributionField out(t_axis, omega_axis);
    std::vector<double> g;
    for (std::size_t row = 0; row < t_axis.n; ++row) {
        const double t = t_axis[row];
        const double lo_d = std::ceil((t - half - t0) / dt);
        const double hi_d = std::floor((t + half - t0) / dt);
        const double last = static_cast<double>(signal.times.size() - 1);
        if (hi_d < 0.0 || lo_d > last) continue;  // window misses the record
        const auto m0 = static_cast<std::size_t>(std::max(0.0, lo_d));
        const auto m1 = static_cast<std::size_t>(std::min(last, hi_d));
        if (m1 < m0) continue;

        g.assign(m1 - m0 + 1, 0.0);
        for (std::size_t m = m0; m <= m1; ++m) {
            const double u = signal.times[m] - t;
            g[m - m0] = std::exp(-0.5 * kappa * u * u) * signal.values[m];
        }
        for (std::size_t j = 0; j < omega_axis.n; ++j) {
            const long double phase0 =
                -static_cast<long double>(w[j]) * (t0 + static_cast<double>(m0) * dt);
            detail::PhasorWalk ph(phase0, -static_cast<long double>(w[j]) * dt);
            double re = 0.0, im = 0.0;
            for (std::size_t m = 0; m < g.size(); ++m) {
                if (m) ph.advance();
                re += g[m] * ph.cos_value();
                im += g[m] * ph.sin_value();
            }
            out(row, j) = pref * (re * re + im * im) * dt * dt;
        }
    }
    return out;
}

/// Widths equivalent to the time-frequency Husimi kernel:
/// sigma_t sigma_w = 1/2 exactly.
inline SmoothingWidths husimi_tf_widths(double kappa) {
    if (!(kappa > 0.0)) throw config_error("husimi_tf_widths: kappa must be positive");
    return SmoothingWidths(std::sqrt(0.5 / kappa), std::sqrt(0.5 * kappa), 1.0);
}

/// Smoothed Wigner-Ville field for widths at or beyond the boundary
/// sigma_t sigma_w = 1/2, evaluated through the nonnegative spectrogram core
/// plus a residual 1D time convolution (mirrors smoothed_wigner_via_husimi).
inline DistributionField smoothed_wv_via_husimi(const Signal& signal,
                                                const SmoothingWidths& widths,
                                                const Axis& t_axis, const Axis& omega_axis) {
    if (widths.product() < 0.5 * (1.0 - 1e-12))
        throw config_error("smoothed_wv_via_husimi: widths must satisfy sigma_t*sigma_w >= 1/2");
    const double kappa = 2.0 * widths.sigma2 * widths.sigma2;
    const double sigma_t_core = 0.5 / widths.sigma2;
    const double extra_sq = widths.sigma1 * widths.sigma1 - sigma_t_core * sigma_t_core;
    if (extra_sq <= 1e-12 * widths.sigma1 * widths.sigma1)
        return husimi_tf(signal, kappa, t_axis, omega_axis);

    const double extra = std::sqrt(extra_sq);
    const double dt = t_axis.spacing();
    const auto pad = static_cast<std::size_t>(std::ceil(7.0 * extra / dt)) + 1;
    const Axis wide(t_axis.min - static_cast<double>(pad) * dt,
                    t_axis.max + static_cast<double>(pad) * dt, t_axis.n + 2 * pad);
    DistributionField h = husimi_tf(signal, kappa, wide, omega_axis);
    h = gaussian_smooth_axis(h, 0, extra);

    DistributionField out(t_axis, omega_axis);
    for (std::size_t i = 0; i < t_axis.n; ++i)
        for (std::size_t j = 0; j < omega_axis.n; ++j) out(i, j) = h(i + pad, j);
    return out;
}

}  // namespace wigsmooth

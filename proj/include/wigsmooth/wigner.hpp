#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "wigsmooth/errors.hpp"
#include "wigsmooth/field.hpp"
#include "wigsmooth/smoothing.hpp"
#include "wigsmooth/wavefunction.hpp"

namespace wigsmooth {

/// Lag-window policy for the Wigner quadrature. `strict` demands a wave
/// function that is decayed (or compactly supported) at the axis edges;
/// `truncated` accepts non-decaying scattering states and integrates over the
/// overlap support available inside the axis, so columns near the axis edges
/// carry windowing artifacts and callers should report interior regions only.
enum class LagWindow { strict, truncated };

namespace detail {

struct SupportRange {
    std::size_t lo = 0, hi = 0;
};

inline SupportRange nonzero_support(const WavefunctionGrid& wf) {
    const double thresh = 1e-14 * wf.max_abs();
    std::size_t lo = 0, hi = wf.values.size() - 1;
    while (lo < hi && std::abs(wf.values[lo]) <= thresh) ++lo;
    while (hi > lo && std::abs(wf.values[hi]) <= thresh) --hi;
    return {lo, hi};
}

inline void require_edge_decay(const WavefunctionGrid& wf, const char* who) {
    const double thresh = 1e-10 * wf.max_abs();
    if (std::abs(wf.values.front()) > thresh || std::abs(wf.values.back()) > thresh)
        throw numerical_error(std::string(who) +
                              ": wave function neither decays at the axis edges nor has compact "
                              "support; quadrature would alias");
}

// Map q_axis samples onto wave-function grid indices; they must coincide.
inline std::vector<std::size_t> map_to_grid(const Axis& q_axis, const Axis& wf_axis) {
    std::vector<std::size_t> idx(q_axis.n);
    const double dx = wf_axis.spacing();
    for (std::size_t i = 0; i < q_axis.n; ++i) {
        const double t = (q_axis[i] - wf_axis.min) / dx;
        const double r = std::round(t);
        if (r < 0.0 || r >= static_cast<double>(wf_axis.n) || std::fabs(t - r) > 1e-6)
            throw config_error("wigner_transform: output q sample does not lie on the "
                               "wave-function grid");
        idx[i] = static_cast<std::size_t>(r);
    }
    return idx;
}

// cos/sin recurrence with periodic resynchronisation against a long-double
// phase, so million-step phase walks stay accurate to ~1e-13.
class PhasorWalk {
  public:
    PhasorWalk(long double phase0, long double step) : step_(step), phase0_(phase0) { reset(0); }
    double cos_value() const { return c_; }
    double sin_value() const { return s_; }
    void advance() {
        const double c = c_ * cstep_ - s_ * sstep_;
        s_ = s_ * cstep_ + c_ * sstep_;
        c_ = c;
        if (++since_sync_ == 128) reset(k_ + 128);
    }

  private:
    void reset(long long k) {
        k_ = k;
        since_sync_ = 0;
        const long double two_pi = 6.283185307179586476925286766559L;
        long double ph = std::fmod(phase0_ + step_ * static_cast<long double>(k), two_pi);
        c_ = static_cast<double>(std::cos(ph));
        s_ = static_cast<double>(std::sin(ph));
        cstep_ = static_cast<double>(std::cos(step_));
        sstep_ = static_cast<double>(std::sin(step_));
    }
    long double step_, phase0_;
    double c_ = 1.0, s_ = 0.0, cstep_ = 1.0, sstep_ = 0.0;
    long long k_ = 0;
    int since_sync_ = 0;
};

}  // namespace detail

/// Wigner transform W(q,p) = (1/pi hbar) Int dx e^{-2ipx/hbar} psi*(q-x) psi(q+x)
/// evaluated by lag quadrature at the wave function's grid spacing, on an
/// output q axis whose samples coincide with wave-function samples.
/// The symmetric lag pairing makes the quadrature real by construction; tests
/// verify the complex residue independently.
inline DistributionField wigner_transform_on(const WavefunctionGrid& wf, const Axis& q_axis,
                                             const Axis& p_axis, double hbar,
                                             LagWindow window = LagWindow::strict) {
    if (!(hbar > 0.0)) throw config_error("wigner_transform: hbar must be positive");
    const double dx = wf.axis.spacing();
    const double pmax = std::max(std::fabs(p_axis.min), std::fabs(p_axis.max));
    if (2.0 * pmax * dx / hbar >= M_PI)
        throw numerical_error("wigner_transform: p range violates the lag Nyquist bound "
                              "2*pmax*dx/hbar < pi");
    if (window == LagWindow::strict) detail::require_edge_decay(wf, "wigner_transform");

    const auto support = detail::nonzero_support(wf);
    const auto qidx = detail::map_to_grid(q_axis, wf.axis);
    const auto p = p_axis.samples();
    const double scale = dx / (M_PI * hbar);

    DistributionField out(q_axis, p_axis);
    std::vector<std::complex<double>> c;
    for (std::size_t row = 0; row < q_axis.n; ++row) {
        const std::size_t i = qidx[row];
        if (i < support.lo || i > support.hi) continue;  // outside support: zero row
        const std::size_t lag_count = std::min(i - support.lo, support.hi - i);

        c.assign(lag_count + 1, {});
        for (std::size_t k = 0; k <= lag_count; ++k)
            c[k] = std::conj(wf.values[i - k]) * wf.values[i + k];

        for (std::size_t j = 0; j < p_axis.n; ++j) {
            // theta_k = 2 p x_k / hbar, accumulated as c0 + 2 sum Re(c_k e^{-i theta_k})
            detail::PhasorWalk ph(0.0L, -2.0L * static_cast<long double>(p[j]) * dx / hbar);
            double acc = c[0].real();
            for (std::size_t k = 1; k <= lag_count; ++k) {
                ph.advance();
                acc += 2.0 * (c[k].real() * ph.cos_value() - c[k].imag() * ph.sin_value());
            }
            out(row, j) = scale * acc;
        }
    }
    return out;
}

inline DistributionField wigner_transform(const WavefunctionGrid& wf, const Axis& p_axis,
                                          double hbar, LagWindow window = LagWindow::strict) {
    return wigner_transform_on(wf, wf.axis, p_axis, hbar, window);
}

/// Smoothing widths equivalent to the Husimi kernel parameter kappa:
/// sigma_q = sqrt(hbar/(2 kappa)), sigma_p = sqrt(hbar kappa / 2).
inline SmoothingWidths husimi_widths(double kappa, double hbar) {
    if (!(kappa > 0.0)) throw config_error("husimi_widths: kappa must be positive");
    return SmoothingWidths(std::sqrt(hbar / (2.0 * kappa)), std::sqrt(hbar * kappa / 2.0), hbar);
}

/// Husimi distribution evaluated directly as the squared Gaussian-windowed
/// momentum projection:
/// H(q,p) = (1/2 pi hbar) sqrt(kappa/pi hbar) |Int dx e^{-kappa (x-q)^2/2 hbar}
///          e^{-ipx/hbar} psi(x)|^2.
inline DistributionField husimi_direct(const WavefunctionGrid& wf, double kappa,
                                       const Axis& q_axis, const Axis& p_axis, double hbar) {
    if (!(kappa > 0.0)) throw config_error("husimi_direct: kappa must be positive");
    if (!(hbar > 0.0)) throw config_error("husimi_direct: hbar must be positive");
    const double dx = wf.axis.spacing();
    const double pmax = std::max(std::fabs(p_axis.min), std::fabs(p_axis.max));
    if (pmax * dx / hbar >= M_PI)
        throw numerical_error("husimi_direct: p range violates the sampling Nyquist bound");

    const double sigma_w = std::sqrt(hbar / kappa);  // window e^{-(x-q)^2 / 2 sigma_w^2}
    const double half = 8.0 * sigma_w;
    const double pref = (1.0 / (2.0 * M_PI * hbar)) * std::sqrt(kappa / (M_PI * hbar));
    const auto p = p_axis.samples();
    const auto support = detail::nonzero_support(wf);
    const double xlo = wf.axis[support.lo], xhi = wf.axis[support.hi];

    DistributionField out(q_axis, p_axis);
    std::vector<std::complex<double>> g;
    for (std::size_t row = 0; row < q_axis.n; ++row) {
        const double q = q_axis[row];
        if (q - half > xhi || q + half < xlo) continue;  // window misses the state
        const double lo_d = std::ceil((q - half - wf.axis.min) / dx);
        const double hi_d = std::floor((q + half - wf.axis.min) / dx);
        const double last = static_cast<double>(wf.axis.n - 1);
        if (hi_d < 0.0 || lo_d > last) continue;
        const auto m0 = static_cast<std::size_t>(std::max(0.0, lo_d));
        const auto m1 = static_cast<std::size_t>(std::min(last, hi_d));
        if (m1 < m0) continue;

        g.assign(m1 - m0 + 1, {});
        for (std::size_t m = m0; m <= m1; ++m) {
            const double u = (wf.axis[m] - q);
            g[m - m0] = std::exp(-0.5 * kappa * u * u / hbar) * wf.values[m];
        }
        for (std::size_t j = 0; j < p_axis.n; ++j) {
            const long double phase0 =
                -static_cast<long double>(p[j]) * (wf.axis.min + static_cast<double>(m0) * dx) /
                hbar;
            detail::PhasorWalk ph(phase0, -static_cast<long double>(p[j]) * dx / hbar);
            double re = 0.0, im = 0.0;
            for (std::size_t m = 0; m < g.size(); ++m) {
                if (m) ph.advance();
                re += g[m].real() * ph.cos_value() - g[m].imag() * ph.sin_value();
                im += g[m].real() * ph.sin_value() + g[m].imag() * ph.cos_value();
            }
            out(row, j) = pref * (re * re + im * im) * dx * dx;
        }
    }
    return out;
}

/// Gaussian-smoothed Wigner field for widths at or beyond the Husimi
/// boundary, evaluated through the manifestly nonnegative Husimi projection:
/// the boundary pair (hbar/2 sigma_p, sigma_p) is computed directly and the
/// leftover q width is applied as a 1D convolution. Used for scattering
/// states, where the raw Wigner quadrature carries finite-window sinc
/// artifacts that plain smoothing would inherit.
inline DistributionField smoothed_wigner_via_husimi(const WavefunctionGrid& wf,
                                                    const SmoothingWidths& widths,
                                                    const Axis& q_axis, const Axis& p_axis,
                                                    double hbar) {
    if (widths.product() < 0.5 * hbar * (1.0 - 1e-12))
        throw config_error("smoothed_wigner_via_husimi: widths must satisfy "
                           "sigma_q*sigma_p >= hbar/2");
    const double kappa = 2.0 * widths.sigma2 * widths.sigma2 / hbar;
    const double sigma_q_core = hbar / (2.0 * widths.sigma2);
    const double extra_sq = widths.sigma1 * widths.sigma1 - sigma_q_core * sigma_q_core;
    if (extra_sq <= 1e-12 * widths.sigma1 * widths.sigma1)
        return husimi_direct(wf, kappa, q_axis, p_axis, hbar);

    // Evaluate the Husimi core on a q axis padded by the residual kernel's
    // reach, convolve, then crop; otherwise mass beyond the requested axis
    // would be lost to zero padding.
    const double extra = std::sqrt(extra_sq);
    const double dq = q_axis.spacing();
    const auto pad = static_cast<std::size_t>(std::ceil(7.0 * extra / dq)) + 1;
    const Axis wide(q_axis.min - static_cast<double>(pad) * dq,
                    q_axis.max + static_cast<double>(pad) * dq, q_axis.n + 2 * pad);
    DistributionField h = husimi_direct(wf, kappa, wide, p_axis, hbar);
    h = gaussian_smooth_axis(h, 0, extra);

    DistributionField out(q_axis, p_axis);
    for (std::size_t i = 0; i < q_axis.n; ++i)
        for (std::size_t j = 0; j < p_axis.n; ++j) out(i, j) = h(i + pad, j);
    return out;
}

}  // namespace wigsmooth

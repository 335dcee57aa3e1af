#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "wigsmooth/errors.hpp"
#include "wigsmooth/fft.hpp"

namespace wigsmooth {

struct EmissionSpectrum {
    std::vector<double> omega;  // angular frequency, a.u.
    std::vector<double> power;  // |FFT of windowed ddot d|^2
};

/// Power spectrum of a uniformly sampled real signal, Hann-windowed and
/// zero-padded to the next power of two (at least 4x the record for smooth
/// harmonic peaks).
inline EmissionSpectrum harmonic_spectrum(const std::vector<double>& values, double dt) {
    if (values.size() < 4) throw config_error("harmonic_spectrum: record too short");
    if (!(dt > 0.0)) throw config_error("harmonic_spectrum: dt must be positive");
    const std::size_t n = values.size();
    const std::size_t nfft = next_pow2(4 * n);
    std::vector<cplx> buf(nfft, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double hann =
            0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                                  static_cast<double>(n - 1)));
        buf[i] = cplx(values[i] * hann, 0.0);
    }
    fft_pow2(buf);
    EmissionSpectrum s;
    const double domega = 2.0 * M_PI / (static_cast<double>(nfft) * dt);
    s.omega.resize(nfft / 2);
    s.power.resize(nfft / 2);
    for (std::size_t k = 0; k < nfft / 2; ++k) {
        s.omega[k] = static_cast<double>(k) * domega;
        s.power[k] = std::norm(buf[k]);
    }
    return s;
}

/// Peak power near each odd harmonic order of omega_l.
inline std::vector<std::pair<int, double>> odd_harmonic_peaks(const EmissionSpectrum& s,
                                                              double omega_l, int max_order) {
    std::vector<std::pair<int, double>> peaks;
    for (int h = 1; h <= max_order; h += 2) {
        const double lo = (h - 0.5) * omega_l, hi = (h + 0.5) * omega_l;
        double best = 0.0;
        for (std::size_t k = 0; k < s.omega.size(); ++k)
            if (s.omega[k] >= lo && s.omega[k] <= hi) best = std::max(best, s.power[k]);
        peaks.emplace_back(h, best);
    }
    return peaks;
}

/// Cutoff harmonic order: the highest odd harmonic whose peak stays within
/// `decades` of the plateau median (median over odd orders in
/// [plateau_lo, plateau_hi]); beyond the cutoff each harmonic drops by about
/// a decade, so the result is insensitive to the exact threshold.
inline double detect_cutoff_order(const EmissionSpectrum& s, double omega_l, int plateau_lo = 11,
                                  int plateau_hi = 41, int max_order = 121,
                                  double decades = 1.5) {
    auto peaks = odd_harmonic_peaks(s, omega_l, max_order);
    std::vector<double> plateau;
    for (const auto& [h, p] : peaks)
        if (h >= plateau_lo && h <= plateau_hi && p > 0.0) plateau.push_back(std::log10(p));
    if (plateau.empty()) throw numerical_error("detect_cutoff_order: empty plateau sample");
    std::sort(plateau.begin(), plateau.end());
    const double med = plateau[plateau.size() / 2];

    int cutoff = plateau_lo;
    for (const auto& [h, p] : peaks)
        if (h >= plateau_lo && p > 0.0 && std::log10(p) >= med - decades)
            cutoff = std::max(cutoff, h);
    return static_cast<double>(cutoff);
}

}  // namespace wigsmooth

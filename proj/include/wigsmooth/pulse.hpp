#pragma once

#include <cmath>

#include "wigsmooth/errors.hpp"

namespace wigsmooth {

/// Laser pulse E(t). The gaussian envelope follows
/// E(t) = E0 exp[-2 ln2 (t-tc)^2 / fwhm^2] cos(omega_L (t-tc)), with fwhm the
/// intensity-profile full width at half maximum. The flat_top envelope is on
/// for |t-tc| <= fwhm/2 with sin^2 amplitude ramps of ramp_cycles optical
/// cycles at each end (ramp_cycles = 0 switches on instantly).
struct PulseSpec {
    enum class Envelope { gaussian, flat_top };

    double e0 = 0.0;        // peak field, a.u.
    double omega_l = 0.057; // carrier angular frequency, a.u.
    double fwhm = 100.0;    // gaussian: intensity FWHM; flat_top: total duration
    double t_center = 0.0;
    Envelope envelope = Envelope::gaussian;
    double ramp_cycles = 0.0;

    PulseSpec() = default;
    PulseSpec(double e0_, double omega, double fwhm_, double tc,
              Envelope env = Envelope::gaussian, double ramp = 0.0)
        : e0(e0_), omega_l(omega), fwhm(fwhm_), t_center(tc), envelope(env), ramp_cycles(ramp) {
        if (!(e0 >= 0.0)) throw config_error("PulseSpec: field amplitude must be nonnegative");
        if (!(omega_l > 0.0)) throw config_error("PulseSpec: carrier frequency must be positive");
        if (!(fwhm > 0.0)) throw config_error("PulseSpec: fwhm must be positive");
        if (ramp_cycles < 0.0) throw config_error("PulseSpec: ramp length must be nonnegative");
        if (envelope == Envelope::flat_top && 2.0 * ramp_cycles * period() > fwhm)
            throw config_error("PulseSpec: ramps longer than the flat-top window");
    }

    double period() const { return 2.0 * M_PI / omega_l; }
    /// Ponderomotive energy U_p = E0^2 / 4 omega^2.
    double ponderomotive_energy() const { return e0 * e0 / (4.0 * omega_l * omega_l); }

    double window_start() const {
        return envelope == Envelope::flat_top ? t_center - 0.5 * fwhm
                                              : t_center - 4.0 * fwhm;
    }
    double window_end() const {
        return envelope == Envelope::flat_top ? t_center + 0.5 * fwhm
                                              : t_center + 4.0 * fwhm;
    }

    double field(double t) const {
        const double u = t - t_center;
        if (envelope == Envelope::gaussian) {
            const double g = std::exp(-2.0 * std::log(2.0) * u * u / (fwhm * fwhm));
            return e0 * g * std::cos(omega_l * u);
        }
        const double half = 0.5 * fwhm;
        if (u < -half || u > half) return 0.0;
        const double ramp = ramp_cycles * period();
        double env = 1.0;
        if (ramp > 0.0) {
            const double from_start = u + half;
            const double to_end = half - u;
            if (from_start < ramp) {
                const double s = std::sin(0.5 * M_PI * from_start / ramp);
                env = s * s;
            } else if (to_end < ramp) {
                const double s = std::sin(0.5 * M_PI * to_end / ramp);
                env = s * s;
            }
        }
        return e0 * env * std::cos(omega_l * u);
    }
};

}  // namespace wigsmooth

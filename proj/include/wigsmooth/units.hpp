#pragma once

#include <cmath>

#include "wigsmooth/errors.hpp"

namespace wigsmooth::units {

// CODATA-derived conversion constants.
inline constexpr double wavelength_nm_times_omega_au = 45.5633;   // lambda[nm] * omega[a.u.]
inline constexpr double intensity_Wcm2_per_field_au2 = 3.50945e16;  // I = E0^2 * this
inline constexpr double fs_per_atomic_time = 0.0241888;

inline double omega_au_from_wavelength_nm(double nm) {
    if (!(nm > 0.0)) throw config_error("convert_units: wavelength must be positive");
    return wavelength_nm_times_omega_au / nm;
}

inline double field_au_from_intensity_Wcm2(double intensity) {
    if (!(intensity > 0.0)) throw config_error("convert_units: intensity must be positive");
    return std::sqrt(intensity / intensity_Wcm2_per_field_au2);
}

inline double time_au_from_fs(double fs) {
    if (!(fs > 0.0)) throw config_error("convert_units: time must be positive");
    return fs / fs_per_atomic_time;
}

}  // namespace wigsmooth::units

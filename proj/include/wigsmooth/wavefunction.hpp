#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "wigsmooth/axis.hpp"
#include "wigsmooth/errors.hpp"

namespace wigsmooth {

/// Complex-valued 1D wave function sampled on a uniform position axis.
struct WavefunctionGrid {
    Axis axis;
    std::vector<std::complex<double>> values;

    WavefunctionGrid() = default;
    WavefunctionGrid(Axis ax, std::vector<std::complex<double>> v)
        : axis(ax), values(std::move(v)) {
        if (values.size() != axis.n)
            throw config_error("WavefunctionGrid: sample count does not match axis");
        for (const auto& z : values)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw numerical_error("WavefunctionGrid: non-finite sample");
    }

    /// Trapezoidal norm integral of |psi|^2.
    double norm_squared() const {
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
            acc += w * std::norm(values[i]);
        }
        return acc * axis.spacing();
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : values) m = std::max(m, std::abs(z));
        return m;
    }

    void normalize() {
        const double n2 = norm_squared();
        if (n2 <= 0.0) throw numerical_error("WavefunctionGrid: cannot normalize zero function");
        const double s = 1.0 / std::sqrt(n2);
        for (auto& z : values) z *= s;
    }
};

}  // namespace wigsmooth

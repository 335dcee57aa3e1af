#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "wigsmooth/errors.hpp"

namespace wigsmooth {

/// Uniformly sampled closed interval [min, max] with n >= 2 points.
struct Axis {
    double min = 0.0;
    double max = 1.0;
    std::size_t n = 2;

    Axis() = default;
    Axis(double min_, double max_, std::size_t n_) : min(min_), max(max_), n(n_) {
        if (!(max > min))
            throw config_error("Axis: max must exceed min");
        if (n < 2)
            throw config_error("Axis: need at least 2 sample points");
        if (!std::isfinite(min) || !std::isfinite(max))
            throw config_error("Axis: bounds must be finite");
    }

    double spacing() const { return (max - min) / static_cast<double>(n - 1); }
    double span() const { return max - min; }

    double operator[](std::size_t i) const { return min + static_cast<double>(i) * spacing(); }

    std::vector<double> samples() const {
        std::vector<double> x(n);
        const double d = spacing();
        for (std::size_t i = 0; i < n; ++i) x[i] = min + static_cast<double>(i) * d;
        return x;
    }

    /// Index of the sample nearest to x.
    std::size_t nearest(double x) const {
        double t = (x - min) / spacing();
        if (t <= 0.0) return 0;
        auto i = static_cast<std::size_t>(std::lround(t));
        return i >= n ? n - 1 : i;
    }

    bool contains(double x) const { return x >= min && x <= max; }

    friend bool operator==(const Axis& a, const Axis& b) {
        return a.min == b.min && a.max == b.max && a.n == b.n;
    }
};

}  // namespace wigsmooth

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wigsmooth/axis.hpp"
#include "wigsmooth/errors.hpp"

namespace wigsmooth {

/// Real-valued 2D field sampled on a pair of uniform axes.
/// Storage is axis1-major: value(i, j) = values[i * axis2.n + j].
/// Holds every distribution this library produces: W(q,p), G(q,p), H(q,p)
/// and their time-frequency counterparts.
class DistributionField {
  public:
    DistributionField() = default;

    DistributionField(Axis a1, Axis a2)
        : axis1_(a1), axis2_(a2), values_(a1.n * a2.n, 0.0) {}

    DistributionField(Axis a1, Axis a2, std::vector<double> values)
        : axis1_(a1), axis2_(a2), values_(std::move(values)) {
        if (values_.size() != axis1_.n * axis2_.n)
            throw config_error("DistributionField: value count does not match axes");
        for (double v : values_)
            if (!std::isfinite(v))
                throw numerical_error("DistributionField: non-finite value");
    }

    const Axis& axis1() const { return axis1_; }
    const Axis& axis2() const { return axis2_; }
    std::size_t n1() const { return axis1_.n; }
    std::size_t n2() const { return axis2_.n; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * axis2_.n + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * axis2_.n + j]; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double min_value() const { return *std::min_element(values_.begin(), values_.end()); }
    double max_value() const { return *std::max_element(values_.begin(), values_.end()); }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::fabs(v));
        return m;
    }

    /// Bilinear interpolation at an arbitrary in-range point.
    double sample(double x1, double x2) const {
        const double d1 = axis1_.spacing(), d2 = axis2_.spacing();
        double t1 = (x1 - axis1_.min) / d1;
        double t2 = (x2 - axis2_.min) / d2;
        t1 = std::clamp(t1, 0.0, static_cast<double>(axis1_.n - 1));
        t2 = std::clamp(t2, 0.0, static_cast<double>(axis2_.n - 1));
        auto i = std::min(static_cast<std::size_t>(t1), axis1_.n - 2);
        auto j = std::min(static_cast<std::size_t>(t2), axis2_.n - 2);
        const double f1 = t1 - static_cast<double>(i);
        const double f2 = t2 - static_cast<double>(j);
        return (1 - f1) * (1 - f2) * (*this)(i, j) + f1 * (1 - f2) * (*this)(i + 1, j) +
               (1 - f1) * f2 * (*this)(i, j + 1) + f1 * f2 * (*this)(i + 1, j + 1);
    }

  private:
    Axis axis1_;
    Axis axis2_;
    std::vector<double> values_;
};

}  // namespace wigsmooth

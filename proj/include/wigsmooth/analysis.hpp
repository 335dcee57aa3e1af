#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "wigsmooth/errors.hpp"
#include "wigsmooth/field.hpp"

namespace wigsmooth {

enum class FieldAxis { axis1, axis2 };

namespace detail {

// Trapezoidal quadrature weights on a uniform axis.
inline std::vector<double> trapezoid_weights(const Axis& ax) {
    std::vector<double> w(ax.n, ax.spacing());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

}  // namespace detail

/// Trapezoidal integral of the field over the axis that is NOT kept.
/// The returned vector has the kept axis's length.
inline std::vector<double> marginal(const DistributionField& field, FieldAxis keep) {
    const auto w1 = detail::trapezoid_weights(field.axis1());
    const auto w2 = detail::trapezoid_weights(field.axis2());
    if (keep == FieldAxis::axis1) {
        std::vector<double> out(field.n1(), 0.0);
        for (std::size_t i = 0; i < field.n1(); ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < field.n2(); ++j) acc += w2[j] * field(i, j);
            out[i] = acc;
        }
        return out;
    }
    std::vector<double> out(field.n2(), 0.0);
    for (std::size_t i = 0; i < field.n1(); ++i)
        for (std::size_t j = 0; j < field.n2(); ++j) out[j] += w1[i] * field(i, j);
    return out;
}

struct Moments {
    double mean1 = 0.0;
    double mean2 = 0.0;
    double delta1 = 0.0;  // sqrt(<x1^2> - <x1>^2)
    double delta2 = 0.0;
    double total_mass = 0.0;
};

/// First moments and standard deviations of the field treated as a (possibly
/// signed) density, by 2D trapezoidal quadrature.
inline Moments moments(const DistributionField& field) {
    const auto w1 = detail::trapezoid_weights(field.axis1());
    const auto w2 = detail::trapezoid_weights(field.axis2());
    const auto x1 = field.axis1().samples();
    const auto x2 = field.axis2().samples();

    double mass = 0.0, m1 = 0.0, m2 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < field.n1(); ++i) {
        double row = 0.0, row2 = 0.0;
        for (std::size_t j = 0; j < field.n2(); ++j) {
            const double f = w2[j] * field(i, j);
            row += f;
            row2 += f * x2[j];
            s2 += w1[i] * f * x2[j] * x2[j];
        }
        mass += w1[i] * row;
        m1 += w1[i] * row * x1[i];
        s1 += w1[i] * row * x1[i] * x1[i];
        m2 += w1[i] * row2;
    }
    if (mass == 0.0)
        throw numerical_error("moments: zero total mass, moments undefined");

    Moments out;
    out.total_mass = mass;
    out.mean1 = m1 / mass;
    out.mean2 = m2 / mass;
    const double var1 = s1 / mass - out.mean1 * out.mean1;
    const double var2 = s2 / mass - out.mean2 * out.mean2;
    if (var1 < 0.0 || var2 < 0.0)
        throw numerical_error("moments: negative variance for this signed density");
    out.delta1 = std::sqrt(var1);
    out.delta2 = std::sqrt(var2);
    return out;
}

/// Total trapezoidal mass without the rest of the moment machinery.
inline double total_mass(const DistributionField& field) {
    const auto w1 = detail::trapezoid_weights(field.axis1());
    const auto w2 = detail::trapezoid_weights(field.axis2());
    double mass = 0.0;
    for (std::size_t i = 0; i < field.n1(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < field.n2(); ++j) row += w2[j] * field(i, j);
        mass += w1[i] * row;
    }
    return mass;
}

}  // namespace wigsmooth

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "wigsmooth/analysis.hpp"
#include "wigsmooth/field.hpp"
#include "wigsmooth/wavefunction.hpp"

namespace testutil {

using wigsmooth::Axis;
using wigsmooth::DistributionField;

inline double max_abs_diff(const DistributionField& a, const DistributionField& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k)
        m = std::max(m, std::fabs(a.values()[k] - b.values()[k]));
    return m;
}

struct GaussianComponent {
    double c1, c2, s1, s2, w;
};

inline DistributionField gaussian_mixture(const Axis& a1, const Axis& a2,
                                          const std::vector<GaussianComponent>& comps) {
    DistributionField f(a1, a2);
    for (std::size_t i = 0; i < a1.n; ++i)
        for (std::size_t j = 0; j < a2.n; ++j) {
            double v = 0.0;
            for (const auto& c : comps) {
                const double u1 = (a1[i] - c.c1) / c.s1;
                const double u2 = (a2[j] - c.c2) / c.s2;
                v += c.w / (2.0 * M_PI * c.s1 * c.s2) * std::exp(-0.5 * (u1 * u1 + u2 * u2));
            }
            f(i, j) = v;
        }
    return f;
}

// Random mixture that decays far below 1e-12 of its max at the grid edges
// (centers at least 8.7 widths from the boundary), the regime where the
// smoothing semigroup and mass-conservation properties are stated.
inline DistributionField random_mixture(const Axis& a1, const Axis& a2, std::mt19937& rng,
                                        bool signed_weights) {
    std::uniform_int_distribution<int> ncomp(2, 5);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int n = ncomp(rng);
    std::vector<GaussianComponent> comps;
    for (int k = 0; k < n; ++k) {
        GaussianComponent c;
        c.c1 = a1.min + a1.span() * (0.35 + 0.3 * u01(rng));
        c.c2 = a2.min + a2.span() * (0.35 + 0.3 * u01(rng));
        c.s1 = a1.span() * (0.02 + 0.02 * u01(rng));
        c.s2 = a2.span() * (0.02 + 0.02 * u01(rng));
        c.w = 0.5 + u01(rng);
        if (signed_weights && k > 0 && u01(rng) < 0.4) c.w = -0.4 * c.w;
        comps.push_back(c);
    }
    return gaussian_mixture(a1, a2, comps);
}

// Normalized Gaussian packet psi(q) = (pi s^2)^{-1/4} exp(-(q-q0)^2/2s^2 + i p0 q / hbar).
inline wigsmooth::WavefunctionGrid gaussian_packet(const Axis& axis, double q0, double p0,
                                                   double s, double hbar = 1.0) {
    std::vector<std::complex<double>> psi(axis.n);
    const double amp = std::pow(M_PI * s * s, -0.25);
    for (std::size_t i = 0; i < axis.n; ++i) {
        const double q = axis[i];
        const double u = (q - q0) / s;
        psi[i] = amp * std::exp(-0.5 * u * u) *
                 std::exp(std::complex<double>(0.0, p0 * q / hbar));
    }
    wigsmooth::WavefunctionGrid wf(axis, std::move(psi));
    wf.normalize();
    return wf;
}

}  // namespace testutil

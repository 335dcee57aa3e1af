#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "wigsmooth/errors.hpp"

namespace wigsmooth {

using cplx = std::complex<double>;

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// In-place iterative radix-2 FFT. Size must be a power of two.
/// Forward kernel is e^{-2*pi*i*jk/n}; inverse divides by n.
inline void fft_pow2(std::vector<cplx>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw config_error("fft_pow2: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

/// Linear convolution of two complex sequences via zero-padded FFT.
inline std::vector<cplx> linear_convolution(const std::vector<cplx>& a,
                                            const std::vector<cplx>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t m = a.size() + b.size() - 1;
    const std::size_t n = next_pow2(m);
    std::vector<cplx> fa(n, cplx(0.0)), fb(n, cplx(0.0));
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    fft_pow2(fa);
    fft_pow2(fb);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft_pow2(fa, true);
    fa.resize(m);
    return fa;
}

// Unit phasor e^{i*theta*s} with the product evaluated in long double so that
// large quadratic Bluestein phases keep ~1e-13 accuracy.
inline cplx unit_phasor(long double theta, long double s) {
    long double ph = std::fmod(theta * s, 2.0L * 3.14159265358979323846264338327950288L);
    return cplx(static_cast<double>(std::cos(ph)), static_cast<double>(std::sin(ph)));
}

/// Chirp-z transform (Bluestein): X_j = sum_{k=0}^{K-1} x_k e^{i a k} e^{i w j k},
/// j = 0..m-1, for real phase increments a (start) and w (step).
inline std::vector<cplx> czt(const std::vector<cplx>& x, std::size_t m, double phase_start,
                             double phase_step) {
    const std::size_t k_count = x.size();
    if (k_count == 0 || m == 0) return std::vector<cplx>(m, cplx(0.0));
    const long double w = phase_step;

    // u_k = x_k e^{i a k} e^{i w k^2 / 2},  v_s = e^{-i w s^2 / 2}
    std::vector<cplx> u(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        long double kk = static_cast<long double>(k);
        u[k] = x[k] * unit_phasor(phase_start, kk) * unit_phasor(w * 0.5L, kk * kk);
    }
    const std::size_t vlen = k_count + m - 1;
    std::vector<cplx> v(vlen);
    for (std::size_t idx = 0; idx < vlen; ++idx) {
        long double s = static_cast<long double>(idx) - static_cast<long double>(k_count - 1);
        v[idx] = unit_phasor(-w * 0.5L, s * s);
    }
    std::vector<cplx> conv = linear_convolution(u, v);

    std::vector<cplx> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        long double jj = static_cast<long double>(j);
        out[j] = conv[j + k_count - 1] * unit_phasor(w * 0.5L, jj * jj);
    }
    return out;
}

}  // namespace wigsmooth

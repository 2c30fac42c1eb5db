#ifndef ANDI_FFT_HPP
#define ANDI_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "andi/errors.hpp"

namespace andi {

// In-place iterative radix-2 FFT. Power-of-two lengths only; that is all the
// circulant-embedding synthesis needs.
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw domain_error("fft: length must be a power of two, got " + std::to_string(n));

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846264338327950288;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace andi

#endif

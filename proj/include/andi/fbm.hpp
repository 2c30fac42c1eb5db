#ifndef ANDI_FBM_HPP
#define ANDI_FBM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "andi/errors.hpp"
#include "andi/fft.hpp"
#include "andi/rng.hpp"
#include "andi/trajectory.hpp"

namespace andi::sim {

// Autocovariance of unit-variance fractional Gaussian noise.
inline double fgn_covariance(double hurst, int lag) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw domain_error("fgn_covariance: H must lie in (0,1), got " + std::to_string(hurst));
    if (lag < 0) throw domain_error("fgn_covariance: lag must be nonnegative");
    if (lag == 0) return 1.0;
    double h2 = 2.0 * hurst;
    double k = static_cast<double>(lag);
    return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(k - 1.0, h2));
}

namespace detail {

// Circulant-embedding eigenvalues for fGn of a given (H, m). The embedding is
// padded to M = 2m with m a power of two so the radix-2 FFT applies; the first
// n <= m samples of a draw are exact fGn. Cached because the eigenvalues only
// depend on (H, m), not on the path being drawn.
struct FgnPlan {
    std::size_t m = 0;                // half embedding size (power of two)
    std::vector<double> sqrt_eig;     // sqrt(lambda_k / (2M)), k = 0..M-1
    bool embedding_ok = true;         // false -> caller must fall back to Hosking
};

inline std::shared_ptr<const FgnPlan> fgn_plan(double hurst, std::size_t n) {
    static std::mutex mu;
    static std::map<std::pair<double, std::size_t>, std::shared_ptr<const FgnPlan>> cache;

    std::size_t m = next_pow2(std::max<std::size_t>(n, 2));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({hurst, m});
        if (it != cache.end()) return it->second;
    }

    auto plan = std::make_shared<FgnPlan>();
    plan->m = m;
    const std::size_t M = 2 * m;
    std::vector<std::complex<double>> c(M);
    for (std::size_t j = 0; j < M; ++j) {
        std::size_t lag = std::min(j, M - j);
        c[j] = fgn_covariance(hurst, static_cast<int>(lag));
    }
    fft_inplace(c);
    plan->sqrt_eig.resize(M);
    for (std::size_t k = 0; k < M; ++k) {
        double lam = c[k].real();
        if (lam < -1e-10) {
            plan->embedding_ok = false;
            break;
        }
        plan->sqrt_eig[k] = std::sqrt(std::max(lam, 0.0) / (2.0 * static_cast<double>(M)));
    }

    std::lock_guard<std::mutex> lock(mu);
    cache.insert({{hurst, m}, plan});
    return plan;
}

// Draw n fGn samples via Davies-Harte circulant embedding.
inline std::vector<double> fgn_davies_harte(const FgnPlan& plan, std::size_t n, Rng& rng) {
    const std::size_t m = plan.m;
    const std::size_t M = 2 * m;
    std::vector<std::complex<double>> a(M);
    // sqrt_eig already carries 1/sqrt(2M); real frequencies get the extra sqrt(2).
    const double s2 = std::sqrt(2.0);
    a[0] = plan.sqrt_eig[0] * s2 * rng.normal();
    a[m] = plan.sqrt_eig[m] * s2 * rng.normal();
    for (std::size_t k = 1; k < m; ++k) {
        double re = rng.normal(), im = rng.normal();
        a[k] = plan.sqrt_eig[k] * std::complex<double>(re, im);
        a[M - k] = std::conj(a[k]);
    }
    fft_inplace(a);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i].real();
    return out;
}

// Exact O(n^2) conditional sampling (Hosking / Durbin-Levinson). Fallback for
// the rare case of a failed embedding; also serves as an independent oracle.
inline std::vector<double> fgn_hosking(double hurst, std::size_t n, Rng& rng) {
    std::vector<double> out(n), phi(n, 0.0), phi_prev(n, 0.0);
    double v = 1.0;
    out[0] = rng.normal();
    for (std::size_t i = 1; i < n; ++i) {
        // reflection coefficient
        double num = fgn_covariance(hurst, static_cast<int>(i));
        for (std::size_t j = 0; j < i - 1; ++j)
            num -= phi_prev[j] * fgn_covariance(hurst, static_cast<int>(i - 1 - j));
        double kappa = num / v;
        phi[i - 1] = kappa;
        for (std::size_t j = 0; j + 1 < i; ++j)
            phi[j] = phi_prev[j] - kappa * phi_prev[i - 2 - j];
        v *= (1.0 - kappa * kappa);
        double mean = 0.0;
        for (std::size_t j = 0; j < i; ++j) mean += phi[j] * out[i - 1 - j];
        out[i] = mean + std::sqrt(v) * rng.normal();
        std::copy(phi.begin(), phi.begin() + static_cast<long>(i), phi_prev.begin());
    }
    return out;
}

}  // namespace detail

// Fractional Brownian motion with Hurst H = alpha/2 and unit increment
// variance; positions are cumulative sums of fractional Gaussian noise.
inline Trajectory gen_fbm(double alpha, int length, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw domain_error("gen_fbm: alpha must lie in (0,2), got " + std::to_string(alpha));
    if (length < 2) throw domain_error("gen_fbm: L must be >= 2");

    const double hurst = alpha / 2.0;
    const std::size_t n = static_cast<std::size_t>(length) - 1;
    Rng rng(seed, 0x66626d00ull);

    std::vector<double> fgn;
    auto plan = detail::fgn_plan(hurst, n);
    if (plan->embedding_ok)
        fgn = detail::fgn_davies_harte(*plan, n, rng);
    else
        fgn = detail::fgn_hosking(hurst, n, rng);

    Trajectory traj;
    traj.positions.resize(n + 1);
    traj.positions[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) traj.positions[i + 1] = traj.positions[i] + fgn[i];
    return traj;
}

}  // namespace andi::sim

#endif

#ifndef ANDI_SIGNAL_HPP
#define ANDI_SIGNAL_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "andi/errors.hpp"
#include "andi/rng.hpp"
#include "andi/trajectory.hpp"

namespace andi::sig {

struct NoisySample {
    std::vector<double> positions;
    double snr = 0.0;
    double sigma_noise = 0.0;
};

// Fixed-length network input with leading zeros.
struct NetInput {
    std::vector<double> values;
    int pad_len = 0;
};

// Population standard deviation of the frame-to-frame displacements.
inline double displacement_std(const std::vector<double>& positions) {
    if (positions.size() < 2)
        throw domain_error("displacement_std: need at least 2 positions");
    const std::size_t n = positions.size() - 1;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += positions[i + 1] - positions[i];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = positions[i + 1] - positions[i] - mean;
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(n));
}

inline double displacement_std(const sim::Trajectory& traj) {
    return displacement_std(traj.positions);
}

// Additive Gaussian localization noise with sigma_noise = sigma_D / snr.
inline NoisySample add_noise(const sim::Trajectory& traj, double snr, std::uint64_t seed) {
    if (!(snr > 0.0)) throw domain_error("add_noise: snr must be positive");
    double sigma_d = displacement_std(traj);
    if (sigma_d == 0.0)
        throw degenerate_error("add_noise: zero displacement std, nothing to scale noise by");

    NoisySample out;
    out.snr = snr;
    out.sigma_noise = sigma_d / snr;
    out.positions = traj.positions;
    Rng rng(seed, 0x6e6f697365ull);
    for (auto& x : out.positions) x += out.sigma_noise * rng.normal();
    return out;
}

// Shift to the origin and rescale so displacement std is 1. Zero-variance
// displacement sequences divide by the mean |displacement| instead (or 1 if
// that is also 0), so straight lines and constants stay well defined.
inline std::vector<double> normalize(const std::vector<double>& positions) {
    if (positions.size() < 2) throw domain_error("normalize: need at least 2 positions");
    double scale = displacement_std(positions);
    if (scale == 0.0) {
        const std::size_t n = positions.size() - 1;
        double mad = 0.0;
        for (std::size_t i = 0; i < n; ++i) mad += std::fabs(positions[i + 1] - positions[i]);
        mad /= static_cast<double>(n);
        scale = mad > 0.0 ? mad : 1.0;
    }
    std::vector<double> out(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
        out[i] = (positions[i] - positions[0]) / scale;
    return out;
}

// Prepend zeros up to target_len; trailing values are preserved bit-exactly.
inline NetInput lead_pad(const std::vector<double>& values, int target_len) {
    if (values.empty()) throw size_error("lead_pad: empty input");
    if (static_cast<int>(values.size()) > target_len)
        throw size_error("lead_pad: input length " + std::to_string(values.size()) +
                         " exceeds target " + std::to_string(target_len));
    NetInput out;
    out.pad_len = target_len - static_cast<int>(values.size());
    out.values.assign(static_cast<std::size_t>(target_len), 0.0);
    std::copy(values.begin(), values.end(), out.values.begin() + out.pad_len);
    return out;
}

}  // namespace andi::sig

#endif

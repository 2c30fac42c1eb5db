#ifndef ANDI_GENERATORS_HPP
#define ANDI_GENERATORS_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include "andi/errors.hpp"
#include "andi/fbm.hpp"
#include "andi/rng.hpp"
#include "andi/trajectory.hpp"

namespace andi::sim {

// Continuous-time random walk: power-law waiting times, unit-variance
// Gaussian jumps, sampled at integer frames by holding the last position.
// Waiting-time law: Pareto w = w_min * U^(-1/alpha) with w_min = 0.1; the
// small scale pushes the walk into its asymptotic MSD ~ t^alpha regime within
// the fitted window. alpha = 1 has a logarithmic MSD correction under any
// Pareto law, so it degenerates to exponential waits of unit mean (normal
// diffusion), matching the MSD slope the label promises.
inline Trajectory gen_ctrw(double alpha, int length, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw domain_error("gen_ctrw: alpha must lie in (0,1], got " + std::to_string(alpha));
    if (length < 2) throw domain_error("gen_ctrw: L must be >= 2");

    Rng rng(seed, 0x63747277ull);
    constexpr double w_min = 0.1;

    Trajectory traj;
    traj.positions.assign(static_cast<std::size_t>(length), 0.0);
    double t = 0.0, x = 0.0;
    int frame = 0;
    while (frame < length) {
        double w = (alpha == 1.0) ? rng.exponential()
                                  : w_min * std::pow(rng.uniform_pos(), -1.0 / alpha);
        t += w;
        // hold x on every frame strictly before the renewal at time t
        int until = t >= static_cast<double>(length) ? length
                                                     : static_cast<int>(std::floor(t)) + 1;
        for (; frame < until; ++frame) traj.positions[static_cast<std::size_t>(frame)] = x;
        x += rng.normal();
    }
    traj.positions[0] = 0.0;
    return traj;
}

// Levy walk: constant-speed flights (v = 1), direction +-1 per flight, flight
// times Pareto with tail index 3 - alpha (so MSD ~ t^alpha for 1 < alpha < 2);
// alpha = 2 is a single ballistic flight. Positions move linearly inside a
// flight and are sampled at integer frames.
inline Trajectory gen_lw(double alpha, int length, std::uint64_t seed) {
    if (!(alpha >= 1.0 && alpha <= 2.0))
        throw domain_error("gen_lw: alpha must lie in [1,2], got " + std::to_string(alpha));
    if (length < 2) throw domain_error("gen_lw: L must be >= 2");

    Rng rng(seed, 0x6c7700ull);
    Trajectory traj;
    traj.positions.assign(static_cast<std::size_t>(length), 0.0);

    double t = 0.0, x = 0.0;
    int frame = 0;
    const double tail = 3.0 - alpha;
    while (frame < length) {
        double w = (alpha == 2.0) ? static_cast<double>(length)  // one ballistic flight
                                  : std::pow(rng.uniform_pos(), -1.0 / tail);
        double dir = rng.uniform() < 0.5 ? 1.0 : -1.0;
        if (alpha == 2.0) dir = 1.0;
        double t_end = t + w;
        while (frame < length && static_cast<double>(frame) < t_end) {
            traj.positions[static_cast<std::size_t>(frame)] = x + dir * (frame - t);
            ++frame;
        }
        x += dir * w;
        t = t_end;
    }
    traj.positions[0] = 0.0;
    return traj;
}

// Scaled Brownian motion: independent Gaussian increments with
// Var[x(t+1) - x(t)] = (t+1)^alpha - t^alpha, hence Var[x(t)] = t^alpha.
inline Trajectory gen_sbm(double alpha, int length, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw domain_error("gen_sbm: alpha must lie in (0,2], got " + std::to_string(alpha));
    if (length < 2) throw domain_error("gen_sbm: L must be >= 2");

    Rng rng(seed, 0x73626d00ull);
    Trajectory traj;
    traj.positions.resize(static_cast<std::size_t>(length));
    traj.positions[0] = 0.0;
    for (int t = 0; t + 1 < length; ++t) {
        double var = std::pow(t + 1.0, alpha) - std::pow(static_cast<double>(t), alpha);
        traj.positions[static_cast<std::size_t>(t) + 1] =
            traj.positions[static_cast<std::size_t>(t)] + std::sqrt(var) * rng.normal();
    }
    return traj;
}

// Annealed transient time motion: piecewise Brownian with diffusivity redrawn
// per dwell segment. Per segment: gamma ~ U(1,2), sigma = alpha*gamma,
// D = U^(1/sigma) on (0,1], dwell tau = D^(-gamma) (at least one frame).
// alpha = 1 degenerates to constant-D Brownian motion.
inline Trajectory gen_attm(double alpha, int length, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw domain_error("gen_attm: alpha must lie in (0,1], got " + std::to_string(alpha));
    if (length < 2) throw domain_error("gen_attm: L must be >= 2");

    Rng rng(seed, 0x6174746dull);
    Trajectory traj;
    traj.positions.resize(static_cast<std::size_t>(length));
    traj.positions[0] = 0.0;

    if (alpha == 1.0) {
        for (int t = 0; t + 1 < length; ++t)
            traj.positions[static_cast<std::size_t>(t) + 1] =
                traj.positions[static_cast<std::size_t>(t)] + rng.normal();
        return traj;
    }

    int frame = 0;  // frame index of the next increment
    while (frame + 1 < length) {
        double gamma = rng.uniform(1.0, 2.0);
        double sigma = alpha * gamma;
        double diff = std::pow(rng.uniform_pos(), 1.0 / sigma);
        double tau = std::pow(diff, -gamma);
        int dwell = std::max(1, static_cast<int>(std::ceil(tau)));
        double step_std = std::sqrt(diff);
        for (int k = 0; k < dwell && frame + 1 < length; ++k, ++frame)
            traj.positions[static_cast<std::size_t>(frame) + 1] =
                traj.positions[static_cast<std::size_t>(frame)] + step_std * rng.normal();
    }
    return traj;
}

// Dispatch over the five generators with per-model alpha-range validation.
inline Trajectory generate(ModelClass model, double alpha, int length, std::uint64_t seed) {
    AlphaRange range = alpha_range(model);
    if (!range.contains(alpha))
        throw range_error(std::string("generate: alpha=") + std::to_string(alpha) +
                          " outside valid range " + range.str() + " for model " +
                          model_name(model));
    switch (model) {
        case ModelClass::ATTM: return gen_attm(alpha, length, seed);
        case ModelClass::CTRW: return gen_ctrw(alpha, length, seed);
        case ModelClass::FBM: return gen_fbm(alpha, length, seed);
        case ModelClass::LW: return gen_lw(alpha, length, seed);
        case ModelClass::SBM: return gen_sbm(alpha, length, seed);
    }
    throw domain_error("unknown model class");
}

}  // namespace andi::sim

#endif

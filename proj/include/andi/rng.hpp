#ifndef ANDI_RNG_HPP
#define ANDI_RNG_HPP

#include <cmath>
#include <cstdint>

namespace andi {

// Counter-style pseudo-random stream built on splitmix64. Every consumer
// derives its own private stream from (seed, stream-id), so parallel callers
// get identical numbers regardless of scheduling order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix64(seed, 0x9e3779b97f4a7c15ull)) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : state_(mix64(seed, stream)) {}

    // One round of splitmix64 output mixing over (a, b).
    static std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        // second round to decorrelate nearby (a, b) pairs
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a power-law base.
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Index in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // 128-bit multiply keeps the modulo bias negligible for our n.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller, one spare cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_pos();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double exponential() { return -std::log(uniform_pos()); }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace andi

#endif

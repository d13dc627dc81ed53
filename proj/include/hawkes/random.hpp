#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hawkes {

/// 64-bit Mersenne Twister whose state is expanded from the seed through
/// std::seed_seq, so trajectories seeded seed, seed+1, ... draw from
/// decorrelated streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                          static_cast<std::uint32_t>(seed >> 32), 0x48415750u};
        engine_.seed(seq);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_positive() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform_positive()) / rate; }

    std::uint64_t poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        std::poisson_distribution<std::uint64_t> dist(mean);
        return dist(engine_);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace hawkes

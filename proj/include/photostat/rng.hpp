// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_RNG_HPP
#define PHOTOSTAT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace photostat {

// Self-contained generators so streams are bit-identical across
// platforms and standard libraries; <random> distributions are
// implementation-defined and would break seeded reproducibility.

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256** seeded through SplitMix64.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& s : state_) s = sm.next();
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
            state_[0] = 1;
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw in the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53;
    }

    /// Standard normal via Box-Muller; the paired draw is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    /// Poisson draw: Knuth's product method below lambda = 10, the PTRS
    /// transformed-rejection sampler (Hormann 1993) above it.
    long long poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        if (lambda < 10.0) {
            const double limit = std::exp(-lambda);
            long long k = 0;
            double prod = uniform();
            while (prod > limit) {
                ++k;
                prod *= uniform();
            }
            return k;
        }
        const double slam = std::sqrt(lambda);
        const double loglam = std::log(lambda);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        while (true) {
            const double u = uniform() - 0.5;
            const double v = uniform();
            const double us = 0.5 - std::fabs(u);
            const double kf =
                std::floor((2.0 * a / us + b) * u + lambda + 0.43);
            if (us >= 0.07 && v <= vr) return static_cast<long long>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v) + std::log(invalpha) -
                    std::log(a / (us * us) + b) <=
                kf * loglam - lambda - std::lgamma(kf + 1.0)) {
                return static_cast<long long>(kf);
            }
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

/// Counter-based stream derivation: every (master seed, stream, index)
/// triple owns an independent generator, so work items can be drawn in
/// any order or in parallel without coordination.
inline Rng derive_rng(std::uint64_t master_seed, std::uint64_t stream,
                      std::uint64_t index) {
    SplitMix64 sm(master_seed);
    std::uint64_t h = sm.next();
    h ^= 0x9E3779B97F4A7C15ULL * (stream + 1);
    SplitMix64 sm2(h);
    h = sm2.next() ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return Rng(SplitMix64(h).next());
}

}  // namespace photostat

#endif

// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_RNG_HPP
#define STARLOC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "starloc/common.hpp"

namespace starloc {

// Deterministic random stream. Distribution transforms are implemented here
// (instead of the std:: distributions, whose output is implementation
// defined) so that a given seed produces identical draws on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    // stream for Monte-Carlo trial `index` derived as seed ^ index
    static Rng trial_stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed ^ index);
    }

    // substream for independent uses inside one trial (noise, perturbations, ...)
    Rng substream(std::uint64_t tag) {
        return Rng(engine_() ^ mix(tag));
    }

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1)
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // standard normal via Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    // CN(0, sigma2): total complex variance sigma2, sigma2/2 per real part
    cplx complex_normal(double sigma2) {
        const double s = std::sqrt(sigma2 / 2.0);
        const double re = s * normal();
        const double im = s * normal();
        return {re, im};
    }

  private:
    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer; decorrelates nearby seeds
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace starloc

#endif

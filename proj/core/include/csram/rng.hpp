#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace csram {

// splitmix64 step, used to derive independent child seeds from a base seed.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream + 1));
}

// Gaussian sampler with an explicit Box-Muller transform. std::normal_distribution
// is implementation-defined, which would break byte-identical reports across
// standard libraries; mt19937_64 itself is fully specified.
class GaussianSource {
public:
    explicit GaussianSource(uint64_t seed) : rng_(seed) {}

    double next(double mean, double stddev) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + stddev * r * std::cos(theta);
    }

    uint64_t raw() { return rng_(); }

private:
    double uniform01() { return (rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace csram

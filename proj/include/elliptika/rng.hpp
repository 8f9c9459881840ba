#ifndef ELLIPTIKA_RNG_HPP
#define ELLIPTIKA_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

#include "elliptika/cmat.hpp"

namespace elliptika {

// Deterministic RNG. std::uniform_real_distribution is implementation
// defined, so uniforms are derived from the raw 64-bit stream directly;
// the same (seed, suite) always yields the same sample sequence.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    static uint64_t fnv1a(std::string_view s) {
        uint64_t h = 1469598103934665603ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    // Independent stream per suite name; parallel suites stay deterministic.
    static Rng for_suite(uint64_t seed, std::string_view suite) {
        return Rng(seed ^ fnv1a(suite));
    }

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    cx box(double re_lo, double re_hi, double im_lo, double im_hi) {
        double re = uniform(re_lo, re_hi);
        double im = uniform(im_lo, im_hi);
        return {re, im};
    }

private:
    std::mt19937_64 eng_;
};

} // namespace elliptika

#endif

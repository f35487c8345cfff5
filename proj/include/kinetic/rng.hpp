#pragma once

// Reproducible random streams with counter-based key derivation.
//
// A Stream is an xoshiro256** generator whose state is derived from
// (master_seed, domain_tag, index tuple) through a splitmix64 absorber.
// Equal keys give identical streams on every platform and thread; distinct
// keys give statistically independent streams. This is the seeding contract
// every simulator in the library relies on for bit-reproducible parallel
// runs: one substream per (cell, step) or (cell, period), never shared.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "vec3.hpp"

namespace kinetic {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t sm_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace detail

class Stream {
public:
    Stream() : Stream(0, "default", {}) {}

    Stream(std::uint64_t master_seed, std::string_view domain_tag,
           std::initializer_list<std::uint64_t> indices) {
        std::uint64_t h = detail::sm_mix(master_seed + detail::kGolden);
        h = detail::sm_mix(h + detail::kGolden + detail::fnv1a(domain_tag));
        for (std::uint64_t idx : indices)
            h = detail::sm_mix(h + detail::kGolden + idx);
        // splitmix64 expansion of the absorbed key into the xoshiro state
        for (auto& w : state_) {
            h += detail::kGolden;
            w = detail::sm_mix(h);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // unbiased integer in [0, n)
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return uniform() < p; }

    // standard normal, Box-Muller with one cached draw
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double phi = 2.0 * kPi * uniform();
        cached_ = r * std::sin(phi);
        have_cached_ = true;
        return r * std::cos(phi);
    }

    Vec3 gaussian3() { return {gaussian(), gaussian(), gaussian()}; }

    // uniform direction on the unit sphere
    Vec3 unit_vector() {
        for (;;) {
            const Vec3 g = gaussian3();
            const double n2 = norm2(g);
            if (n2 > 1e-24) return g * (1.0 / std::sqrt(n2));
        }
    }

    std::uint64_t poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        return lambda < 10.0 ? poisson_knuth(lambda) : poisson_ptrd(lambda);
    }

private:
    static constexpr double kPi = 3.14159265358979323846;

    std::uint64_t poisson_knuth(double lambda) {
        const double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform_pos();
        } while (p > limit);
        return k - 1;
    }

    // Hormann's PTRD transformed-rejection sampler, exact for lambda >= 10
    std::uint64_t poisson_ptrd(double mu) {
        const double smu = std::sqrt(mu);
        const double b = 0.931 + 2.53 * smu;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mu = std::log(mu);
        for (;;) {
            const double u = uniform() - 0.5;
            const double v = uniform();
            const double us = 0.5 - std::abs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mu + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                kf * log_mu - mu - std::lgamma(kf + 1.0))
                return static_cast<std::uint64_t>(kf);
        }
    }

    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// Substream derivation used throughout the harness: the same key always
// yields the same stream, independent of worker scheduling.
inline Stream seed_substream(std::uint64_t master_seed, std::string_view domain_tag,
                             std::initializer_list<std::uint64_t> indices = {}) {
    return Stream(master_seed, domain_tag, indices);
}

} // namespace kinetic

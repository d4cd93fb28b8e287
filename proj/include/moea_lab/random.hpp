#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace moea_lab {

/// splitmix64 finalizer; used for seed derivation only.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// 64-bit FNV-1a over a byte string.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seeded random stream. Every stochastic operation in the library takes one
/// of these explicitly; nothing reads global state.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded integers and unit-interval doubles are derived here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined, so results are identical across standard libraries.
class RandomSource {
public:
    using result_type = std::uint64_t;

    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    /// Independent stream for a named purpose, derived from this source's seed
    /// (not from its current state).
    [[nodiscard]] RandomSource derive(std::string_view name) const
    {
        return RandomSource(mix64(seed_ ^ mix64(fnv1a64(name))));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    result_type operator()() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t uniform_index(std::uint64_t bound)
    {
        if (bound == 0) {
            throw std::invalid_argument("uniform_index: bound must be positive");
        }
        auto x = engine_();
        auto m = static_cast<unsigned __int128>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = engine_();
                m = static_cast<unsigned __int128>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Draws from Bin(trials, p) by inversion, enumerating outcomes outward from
/// the mode. Expected work is O(sqrt(trials * p * (1 - p))) and no pmf value
/// underflows for the lengths used here.
inline std::uint64_t sample_binomial(std::uint64_t trials, double p, RandomSource& rng)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("sample_binomial: p must lie in [0, 1]");
    }
    if (trials == 0 || p == 0.0) {
        return 0;
    }
    if (p == 1.0) {
        return trials;
    }

    const double n = static_cast<double>(trials);
    const double q = 1.0 - p;
    auto mode = static_cast<std::uint64_t>(std::floor((n + 1.0) * p));
    if (mode > trials) {
        mode = trials;
    }
    const double m = static_cast<double>(mode);
    const double log_pm = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0)
        + m * std::log(p) + (n - m) * std::log1p(-p);
    const double odds = p / q;

    double u = rng.uniform01();
    double p_lo = std::exp(log_pm);
    double p_hi = p_lo;
    u -= p_lo;
    if (u < 0.0) {
        return mode;
    }
    std::uint64_t lo = mode;
    std::uint64_t hi = mode;
    while (lo > 0 || hi < trials) {
        if (lo > 0) {
            p_lo *= static_cast<double>(lo) / (static_cast<double>(trials - lo + 1) * odds);
            --lo;
            u -= p_lo;
            if (u < 0.0) {
                return lo;
            }
        }
        if (hi < trials) {
            p_hi *= static_cast<double>(trials - hi) / static_cast<double>(hi + 1) * odds;
            ++hi;
            u -= p_hi;
            if (u < 0.0) {
                return hi;
            }
        }
    }
    // Only reachable through rounding in the accumulated pmf (mass < 1e-12).
    return mode;
}

} // namespace moea_lab

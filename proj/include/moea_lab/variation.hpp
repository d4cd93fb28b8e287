#pragma once

#include "bitstring.hpp"
#include "random.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace moea_lab {

/// Uniformly random bit string of length n.
inline BitString random_bitstring(std::size_t n, RandomSource& rng)
{
    if (n == 0) {
        throw std::invalid_argument("random_bitstring: length must be positive");
    }
    BitString x(n);
    x.fill_random(rng);
    return x;
}

/// Copy of x with exactly `count` positions flipped; the flipped set is a
/// uniformly random subset of that size (Floyd's sampling, O(count) draws).
inline BitString flip_exact(const BitString& x, std::size_t count, RandomSource& rng)
{
    const std::size_t n = x.size();
    if (count > n) {
        throw std::invalid_argument("flip_exact: cannot flip more bits than the length");
    }
    BitString y(x);
    for (std::size_t j = n - count; j < n; ++j) {
        const auto t = static_cast<std::size_t>(rng.uniform_index(j + 1));
        // y differs from x exactly on the positions chosen so far
        if (y.get(t) != x.get(t)) {
            y.flip(j);
        } else {
            y.flip(t);
        }
    }
    return y;
}

/// Standard bit-wise mutation: every bit flips independently with probability
/// `rate`. Drawn as a Bin(n, rate) flip count followed by a uniform subset of
/// that size, which has the same distribution.
inline BitString bitwise_mutation(const BitString& x, double rate, RandomSource& rng)
{
    const auto count = static_cast<std::size_t>(sample_binomial(x.size(), rate, rng));
    return flip_exact(x, count, rng);
}

/// `count` offspring, each taking every bit from `winner` with probability
/// `bias` and from `parent` otherwise, independently per bit and offspring.
/// Only positions where the two differ consume randomness.
inline std::vector<BitString> biased_crossover(const BitString& parent, const BitString& winner, double bias,
                                               std::size_t count, RandomSource& rng)
{
    if (parent.size() != winner.size()) {
        throw std::invalid_argument("biased_crossover: length mismatch");
    }
    if (!(bias >= 0.0 && bias <= 1.0)) {
        throw std::invalid_argument("biased_crossover: bias must lie in [0, 1]");
    }
    const auto diff = differing_positions(parent, winner);
    std::vector<BitString> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        BitString child(parent);
        for (auto pos : diff) {
            if (rng.bernoulli(bias)) {
                child.flip(pos);
            }
        }
        out.push_back(std::move(child));
    }
    return out;
}

} // namespace moea_lab

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moea_lab {

/// Fixed-length bit string packed into 64-bit words.
///
/// Bits beyond size() in the last word are kept at zero so that word-wise
/// popcount and comparison stay exact.
class BitString {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitString() = default;

    explicit BitString(std::size_t n)
        : n_(n), words_((n + word_bits - 1) / word_bits, 0)
    {
        if (n == 0) {
            throw std::invalid_argument("BitString: length must be positive");
        }
    }

    /// Parses a string of '0'/'1' characters, position 0 first.
    static BitString from_string(std::string_view bits)
    {
        BitString x(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                x.set(i, true);
            } else if (bits[i] != '0') {
                throw std::invalid_argument("BitString: expected only '0' and '1'");
            }
        }
        return x;
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    [[nodiscard]] bool get(std::size_t i) const noexcept
    {
        return (words_[i / word_bits] >> (i % word_bits)) & 1U;
    }

    void set(std::size_t i, bool value) noexcept
    {
        const word_type mask = word_type{1} << (i % word_bits);
        if (value) {
            words_[i / word_bits] |= mask;
        } else {
            words_[i / word_bits] &= ~mask;
        }
    }

    void flip(std::size_t i) noexcept { words_[i / word_bits] ^= word_type{1} << (i % word_bits); }

    [[nodiscard]] std::size_t count_ones() const noexcept
    {
        std::size_t ones = 0;
        for (auto w : words_) {
            ones += static_cast<std::size_t>(std::popcount(w));
        }
        return ones;
    }

    [[nodiscard]] BitString complement() const
    {
        BitString out(*this);
        for (auto& w : out.words_) {
            w = ~w;
        }
        out.clear_tail();
        return out;
    }

    [[nodiscard]] std::string to_string() const
    {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i) {
            if (get(i)) {
                s[i] = '1';
            }
        }
        return s;
    }

    [[nodiscard]] const std::vector<word_type>& words() const noexcept { return words_; }

    /// Overwrites every bit with output of a 64-bit generator.
    template <class Generator>
    void fill_random(Generator& gen)
    {
        for (auto& w : words_) {
            w = gen();
        }
        clear_tail();
    }

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    void clear_tail() noexcept
    {
        if (const auto rem = n_ % word_bits; rem != 0 && !words_.empty()) {
            words_.back() &= (word_type{1} << rem) - 1;
        }
    }

    std::size_t n_ = 0;
    std::vector<word_type> words_;
};

inline std::size_t hamming_distance(const BitString& x, const BitString& y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("hamming_distance: length mismatch");
    }
    std::size_t d = 0;
    const auto& a = x.words();
    const auto& b = y.words();
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
    }
    return d;
}

/// Positions where x and y differ, in increasing order.
inline std::vector<std::size_t> differing_positions(const BitString& x, const BitString& y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("differing_positions: length mismatch");
    }
    std::vector<std::size_t> out;
    const auto& a = x.words();
    const auto& b = y.words();
    for (std::size_t w = 0; w < a.size(); ++w) {
        auto diff = a[w] ^ b[w];
        while (diff != 0) {
            out.push_back(w * BitString::word_bits + static_cast<std::size_t>(std::countr_zero(diff)));
            diff &= diff - 1;
        }
    }
    return out;
}

} // namespace moea_lab

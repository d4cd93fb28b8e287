#pragma once

#include "bitstring.hpp"
#include "objectives.hpp"
#include "random.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace moea_lab {

/// A search point with its objective values, cached when it was evaluated.
struct Individual {
    BitString genotype;
    ObjectivePair objectives;
};

/// Population of mutually non-dominated individuals, using a linear
/// dominance scan. Works for any bi-objective benchmark.
///
/// Insertion keeps the incumbent: a candidate that is weakly dominated by a
/// member (this includes an equal objective vector) is rejected. Otherwise
/// every member the candidate weakly dominates is removed and the candidate
/// is appended. Member order is insertion order.
class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t n) : n_(n) {}

    [[nodiscard]] std::size_t length() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] const std::vector<Individual>& members() const noexcept { return members_; }

    bool insert(Individual y)
    {
        if (y.genotype.size() != n_) {
            throw std::invalid_argument("archive insert: length mismatch");
        }
        for (const auto& z : members_) {
            if (weakly_dominates(z.objectives, y.objectives)) {
                return false;
            }
        }
        std::erase_if(members_, [&](const Individual& z) { return weakly_dominates(y.objectives, z.objectives); });
        members_.push_back(std::move(y));
        return true;
    }

    /// Number of distinct front points held. All members have distinct
    /// objective vectors, so this is the member count.
    [[nodiscard]] std::size_t coverage() const noexcept { return members_.size(); }

    [[nodiscard]] const Individual& random_member(RandomSource& rng) const
    {
        if (members_.empty()) {
            throw std::logic_error("random_member on empty archive");
        }
        return members_[static_cast<std::size_t>(rng.uniform_index(members_.size()))];
    }

private:
    std::size_t n_;
    std::vector<Individual> members_;
};

/// Archive for benchmarks whose objective vectors all satisfy f1 + f2 = n
/// (OneMinMax). Any two distinct such vectors are incomparable, so an insert
/// only has to check whether the f1 slot is already taken. Members are never
/// removed.
class IndexedFrontArchive {
public:
    explicit IndexedFrontArchive(std::size_t n) : n_(n), slot_(n + 1, npos) {}

    [[nodiscard]] std::size_t length() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] const std::vector<Individual>& members() const noexcept { return members_; }

    bool insert(Individual y)
    {
        if (y.genotype.size() != n_) {
            throw std::invalid_argument("archive insert: length mismatch");
        }
        const auto [f1, f2] = y.objectives;
        if (f1 < 0 || f2 < 0 || static_cast<std::size_t>(f1 + f2) != n_) {
            throw std::invalid_argument("indexed archive requires objective vectors with f1 + f2 = n");
        }
        auto& slot = slot_[static_cast<std::size_t>(f1)];
        if (slot != npos) {
            return false;
        }
        slot = members_.size();
        members_.push_back(std::move(y));
        return true;
    }

    [[nodiscard]] bool contains_f1(std::int64_t f1) const noexcept
    {
        return f1 >= 0 && static_cast<std::size_t>(f1) <= n_ && slot_[static_cast<std::size_t>(f1)] != npos;
    }

    [[nodiscard]] std::size_t coverage() const noexcept { return members_.size(); }

    [[nodiscard]] const Individual& random_member(RandomSource& rng) const
    {
        if (members_.empty()) {
            throw std::logic_error("random_member on empty archive");
        }
        return members_[static_cast<std::size_t>(rng.uniform_index(members_.size()))];
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t n_;
    std::vector<std::size_t> slot_;
    std::vector<Individual> members_;
};

template <class A>
concept Archive = requires(A& a, const A& ca, Individual y, RandomSource& rng) {
    { a.insert(std::move(y)) } -> std::same_as<bool>;
    { ca.size() } -> std::convertible_to<std::size_t>;
    { ca.length() } -> std::convertible_to<std::size_t>;
    { ca.coverage() } -> std::convertible_to<std::size_t>;
    { ca.members() } -> std::convertible_to<const std::vector<Individual>&>;
    { ca.random_member(rng) } -> std::convertible_to<const Individual&>;
};

template <Archive A>
std::size_t coverage(const A& archive)
{
    return archive.coverage();
}

/// Smallest objective-b value j ∈ [0, n-1] held by some member such that no
/// member has value j + 1: the missing neighbour that is easiest to reach.
/// Empty when that side of the front is complete.
template <Archive A>
std::optional<std::size_t> gap_statistic(const A& archive, int b)
{
    if (archive.empty()) {
        throw std::invalid_argument("gap_statistic: archive is empty");
    }
    const std::size_t n = archive.length();
    std::vector<bool> present(n + 2, false);
    for (const auto& z : archive.members()) {
        const auto v = objective(z.objectives, b);
        if (v >= 0 && static_cast<std::size_t>(v) <= n) {
            present[static_cast<std::size_t>(v)] = true;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (present[j] && !present[j + 1]) {
            return j;
        }
    }
    return std::nullopt;
}

} // namespace moea_lab

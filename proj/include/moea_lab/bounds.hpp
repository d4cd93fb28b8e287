#pragma once

#include "algorithms.hpp"
#include "objectives.hpp"
#include "pareto.hpp"
#include "random.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace moea_lab {

// Closed-form success-probability lower bounds for one (1+(λ,λ)) GSEMO
// iteration on OneMinMax, in the situation where the archive holds x with
// f(x) = (n-d, d) but nothing at (n-d+1, d-1). Written with expm1/log1p so
// small probabilities keep full relative precision.

/// Mutation phase, conditional on ℓ flips: x is picked as parent (1/n) and
/// some mutant flips one of x's d zero-bits.
inline double mutation_phase_bound(std::size_t n, std::size_t d, std::size_t lambda, std::size_t flips)
{
    if (d == 0 || d > n) {
        throw std::invalid_argument("mutation_phase_bound: d must lie in [1, n]");
    }
    if (lambda == 0) {
        throw std::invalid_argument("mutation_phase_bound: lambda must be positive");
    }
    const double nd = static_cast<double>(n);
    const double exponent = static_cast<double>(lambda) * static_cast<double>(flips);
    if (d == n) {
        return flips == 0 ? 0.0 : 1.0 / nd;
    }
    return -std::expm1(exponent * std::log1p(-static_cast<double>(d) / nd)) / nd;
}

/// Crossover phase after a successful mutation phase, conditional on ℓ flips:
/// some offspring takes exactly one chosen differing bit from the winner.
inline double crossover_phase_bound(double c, std::size_t flips, std::size_t lambda)
{
    if (!(c > 0.0 && c <= 1.0)) {
        throw std::invalid_argument("crossover_phase_bound: c must lie in (0, 1]");
    }
    if (flips == 0) {
        throw std::invalid_argument("crossover_phase_bound: needs at least one flipped bit");
    }
    if (lambda == 0) {
        throw std::invalid_argument("crossover_phase_bound: lambda must be positive");
    }
    const double single = c * std::pow(1.0 - c, static_cast<double>(flips - 1));
    if (single >= 1.0) {
        return 1.0;
    }
    return -std::expm1(static_cast<double>(lambda) * std::log1p(-single));
}

/// Per-iteration probability bound (C/n)(1 - (d/n)^{λk/2})(1 - e^{-λ/(8k)})
/// for covering the missing neighbour.
inline double step_probability_bound(std::size_t n, std::size_t d, double lambda, double k, double C)
{
    if (d > n) {
        throw std::invalid_argument("step_probability_bound: d must not exceed n");
    }
    if (!(lambda >= 2.0) || !(k >= 2.0)) {
        throw std::invalid_argument("step_probability_bound: lambda and k must be at least 2");
    }
    if (!(C > 0.0)) {
        throw std::invalid_argument("step_probability_bound: C must be positive");
    }
    const double nd = static_cast<double>(n);
    const double ratio = static_cast<double>(d) / nd;
    const double first = d == 0 ? 1.0 : -std::expm1(lambda * k / 2.0 * std::log(ratio));
    const double second = -std::expm1(-lambda / (8.0 * k));
    return C / nd * first * second;
}

/// Expected waiting time (iterations) implied by step_probability_bound.
inline double step_waiting_time_bound(std::size_t n, std::size_t d, double lambda, double k, double C)
{
    return 1.0 / step_probability_bound(n, d, lambda, k, C);
}

/// Pr[Bin(n, p) = i].
inline double binomial_pmf(std::size_t n, std::size_t i, double p)
{
    if (i > n) {
        return 0.0;
    }
    if (p == 0.0) {
        return i == 0 ? 1.0 : 0.0;
    }
    if (p == 1.0) {
        return i == n ? 1.0 : 0.0;
    }
    const double nd = static_cast<double>(n);
    const double id = static_cast<double>(i);
    return std::exp(std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) - std::lgamma(nd - id + 1.0) + id * std::log(p)
                    + (nd - id) * std::log1p(-p));
}

/// Mutation-phase × crossover-phase product marginalised over ℓ ~ Bin(n, k/n).
inline double marginal_step_bound(std::size_t n, std::size_t d, std::size_t lambda, double k, double c)
{
    const double p = k / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t l = 1; l <= n; ++l) {
        total += binomial_pmf(n, l, p) * mutation_phase_bound(n, d, lambda, l) * crossover_phase_bound(c, l, lambda);
    }
    return total;
}

/// One-sided Monte Carlo acceptance: estimate >= bound - 3 sqrt(bound(1-bound)/trials).
inline bool clears_bound(double estimate, double bound, std::uint64_t trials)
{
    const double slack = 3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
    return estimate >= bound - slack;
}

/// Archive holding one OneMinMax individual for every f1 value except
/// n - d + 1, so the parent x with f(x) = (n-d, d) is picked with probability
/// exactly 1/n.
inline IndexedFrontArchive front_without_target(std::size_t n, std::size_t d)
{
    if (d == 0 || d > n) {
        throw std::invalid_argument("front_without_target: d must lie in [1, n]");
    }
    IndexedFrontArchive archive(n);
    const std::size_t skip = n - d + 1;
    for (std::size_t ones = 0; ones <= n; ++ones) {
        if (ones == skip) {
            continue;
        }
        BitString x(n);
        for (std::size_t i = 0; i < ones; ++i) {
            x.set(i, true);
        }
        archive.insert({x, one_min_max(x)});
    }
    return archive;
}

struct ConditionalCheck {
    std::size_t flips = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double bound = 0.0;
    bool pass = true;
};

struct BoundReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t lambda = 0;
    double k = 0.0;
    double c = 0.0;
    /// Mutation-phase × crossover-phase product marginalised over ℓ.
    double bound = 0.0;
    double estimate = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    /// Per-ℓ conditional checks for ℓ values with at least min_conditional_trials samples.
    std::vector<ConditionalCheck> conditional;
    /// step_probability_bound with C = 1 (NaN when λ or k is below 2).
    double unit_step_bound = std::numeric_limits<double>::quiet_NaN();
    /// Largest C whose step bound still lies below the 3σ lower confidence
    /// limit of the estimate.
    double calibrated_C = std::numeric_limits<double>::quiet_NaN();
    bool marginal_pass = false;
    bool conditional_pass = false;
    bool step_pass = false;
    bool pass = false;
};

inline constexpr std::uint64_t min_conditional_trials = 1000;
inline constexpr std::uint64_t min_validation_trials = 10'000;

/// Runs `trials` independent single iterations of the (1+(λ,λ)) GSEMO step
/// from `fixture` and compares the frequency of covering (n-d+1, d-1) with
/// the closed-form bounds.
inline BoundReport validate_lemma_bounds(const IndexedFrontArchive& fixture, std::size_t d, std::size_t lambda,
                                         double k, double c, std::uint64_t trials, RandomSource& rng)
{
    const std::size_t n = fixture.length();
    if (d == 0 || d > n) {
        throw std::invalid_argument("validate_lemma_bounds: d must lie in [1, n]");
    }
    const auto parent_f1 = static_cast<std::int64_t>(n - d);
    const auto target_f1 = parent_f1 + 1;
    if (!fixture.contains_f1(parent_f1) || fixture.contains_f1(target_f1)) {
        throw std::invalid_argument("validate_lemma_bounds: fixture must hold (n-d, d) and lack (n-d+1, d-1)");
    }
    if (trials < min_validation_trials) {
        throw std::invalid_argument("validate_lemma_bounds: at least 10^4 trials are required");
    }
    if (lambda == 0 || !(k >= 0.0 && k <= static_cast<double>(n)) || !(c > 0.0 && c <= 1.0)) {
        throw std::invalid_argument("validate_lemma_bounds: invalid lambda, k or c");
    }

    const auto problem = make_one_min_max(n);
    const IterationParams params{lambda, k, c};
    std::vector<std::uint64_t> per_flip_trials(n + 1, 0);
    std::vector<std::uint64_t> per_flip_hits(n + 1, 0);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto proposal = propose_opll_offspring(problem, fixture, params, rng);
        bool hit = false;
        for (const auto& y : proposal.offspring) {
            if (y.objectives.f1 == target_f1) {
                hit = true;
                break;
            }
        }
        ++per_flip_trials[proposal.flips];
        if (hit) {
            ++per_flip_hits[proposal.flips];
            ++hits;
        }
    }

    BoundReport r;
    r.n = n;
    r.d = d;
    r.lambda = lambda;
    r.k = k;
    r.c = c;
    r.trials = trials;
    r.successes = hits;
    r.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    r.bound = marginal_step_bound(n, d, lambda, k, c);
    r.marginal_pass = clears_bound(r.estimate, r.bound, trials);

    r.conditional_pass = true;
    for (std::size_t l = 1; l <= n; ++l) {
        if (per_flip_trials[l] < min_conditional_trials) {
            continue;
        }
        ConditionalCheck check;
        check.flips = l;
        check.trials = per_flip_trials[l];
        check.successes = per_flip_hits[l];
        check.bound = mutation_phase_bound(n, d, lambda, l) * crossover_phase_bound(c, l, lambda);
        check.pass = clears_bound(static_cast<double>(check.successes) / static_cast<double>(check.trials),
                                  check.bound, check.trials);
        r.conditional_pass = r.conditional_pass && check.pass;
        r.conditional.push_back(check);
    }

    if (lambda >= 2 && k >= 2.0 && d < n) {
        r.unit_step_bound = step_probability_bound(n, d, static_cast<double>(lambda), k, 1.0);
        const double sigma = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
        const double lower = std::max(0.0, r.estimate - 3.0 * sigma);
        r.calibrated_C = lower / r.unit_step_bound;
        r.step_pass = r.calibrated_C > 0.0;
    } else {
        r.step_pass = true;
    }
    r.pass = r.marginal_pass && r.conditional_pass && r.step_pass;
    return r;
}

inline BoundReport validate_lemma_bounds(std::size_t n, std::size_t d, std::size_t lambda, double k, double c,
                                         std::uint64_t trials, RandomSource& rng)
{
    return validate_lemma_bounds(front_without_target(n, d), d, lambda, k, c, trials, rng);
}

} // namespace moea_lab

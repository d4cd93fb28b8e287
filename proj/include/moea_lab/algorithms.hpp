#pragma once

#include "bitstring.hpp"
#include "control.hpp"
#include "objectives.hpp"
#include "pareto.hpp"
#include "random.hpp"
#include "variation.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moea_lab {

enum class AlgorithmKind { gsemo, opll_ga, opll_gsemo };

inline std::string_view to_string(AlgorithmKind a) noexcept
{
    switch (a) {
    case AlgorithmKind::gsemo: return "gsemo";
    case AlgorithmKind::opll_ga: return "opll-ga";
    case AlgorithmKind::opll_gsemo: return "opll-gsemo";
    }
    return "?";
}

inline AlgorithmKind parse_algorithm(std::string_view s)
{
    if (s == "gsemo") return AlgorithmKind::gsemo;
    if (s == "opll-ga") return AlgorithmKind::opll_ga;
    if (s == "opll-gsemo") return AlgorithmKind::opll_gsemo;
    throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

enum class ArchiveKind { automatic, scan, indexed };

/// How λ, k and c are chosen. For the static mode `lambda` is required; k
/// defaults to λ and c to 1/k.
struct ControllerSpec {
    ControllerMode mode = ControllerMode::static_params;
    std::optional<double> lambda;
    std::optional<double> k;
    std::optional<double> c;
    double update_strength = 1.5;
};

inline constexpr std::uint64_t default_budget = 1'000'000'000ULL;

struct RunConfig {
    AlgorithmKind algorithm = AlgorithmKind::gsemo;
    std::string benchmark = "oneminmax";
    std::size_t n = 10;
    ControllerSpec controller;
    std::uint64_t seed = 0;
    std::uint64_t budget = default_budget;
    /// Coverage (or fitness, for the GA) levels whose first-hit evaluation
    /// count is recorded. Empty records every level reached.
    std::vector<std::size_t> milestones;
    bool record_lambda_trajectory = false;
    ArchiveKind archive = ArchiveKind::automatic;
};

enum class RunStatus { covered, budget_exhausted };

inline std::string_view to_string(RunStatus s) noexcept
{
    return s == RunStatus::covered ? "covered" : "budget_exhausted";
}

struct Milestone {
    std::size_t level = 0;
    std::uint64_t evaluations = 0;

    friend bool operator==(const Milestone&, const Milestone&) = default;
};

struct RunRecord {
    std::uint64_t seed = 0;
    /// Evaluations until the whole front (or the optimum) was first reached;
    /// on budget exhaustion, the evaluations spent.
    std::uint64_t total_evaluations = 0;
    std::uint64_t iterations = 0;
    /// Real-valued λ of every iteration, if requested.
    std::vector<double> lambda_trajectory;
    std::vector<Milestone> milestones;
    RunStatus status = RunStatus::budget_exhausted;
    std::size_t final_coverage = 0;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// State handed to an observer after every iteration.
struct IterationView {
    std::uint64_t iteration = 0;
    std::uint64_t evaluations = 0;
    IterationParams params;
    std::size_t coverage = 0;
};

struct NoObserver {
    template <class... Args>
    void operator()(const Args&...) const noexcept
    {
    }
};

inline void validate(const RunConfig& cfg)
{
    if (cfg.n == 0) {
        throw std::invalid_argument("n must be positive");
    }
    if (cfg.budget == 0) {
        throw std::invalid_argument("evaluation budget must be positive");
    }
    const auto& ctl = cfg.controller;
    const auto n = static_cast<double>(cfg.n);
    switch (cfg.algorithm) {
    case AlgorithmKind::gsemo:
        return;
    case AlgorithmKind::opll_gsemo:
        if (ctl.mode == ControllerMode::fitness_dependent) {
            throw std::invalid_argument("fitness-dependent control is only defined for opll-ga");
        }
        break;
    case AlgorithmKind::opll_ga:
        if (ctl.mode != ControllerMode::static_params && ctl.mode != ControllerMode::fitness_dependent) {
            throw std::invalid_argument("opll-ga supports only static or fitness-dependent control");
        }
        break;
    }
    if (ctl.mode == ControllerMode::static_params) {
        if (!ctl.lambda) {
            throw std::invalid_argument("static control requires lambda");
        }
        const auto p = static_params(ctl.k.value_or(*ctl.lambda), *ctl.lambda, ctl.c);
        if (p.k > n) {
            throw std::invalid_argument("mutation strength k must not exceed n");
        }
    }
    if (ctl.mode == ControllerMode::one_fifth && !(ctl.update_strength > 1.0)) {
        throw std::invalid_argument("update strength F must exceed 1");
    }
}

namespace detail {

class MilestoneTracker {
public:
    explicit MilestoneTracker(std::vector<std::size_t> levels) : levels_(std::move(levels))
    {
        std::sort(levels_.begin(), levels_.end());
        levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
    }

    void observe(std::size_t level, std::uint64_t evaluations, std::vector<Milestone>& out)
    {
        if (levels_.empty()) {
            if (out.empty() || level > out.back().level) {
                out.push_back({level, evaluations});
            }
            return;
        }
        while (next_ < levels_.size() && levels_[next_] <= level) {
            out.push_back({levels_[next_], evaluations});
            ++next_;
        }
    }

private:
    std::vector<std::size_t> levels_;
    std::size_t next_ = 0;
};

/// Index of a maximal element under `score`, ties broken uniformly at random.
template <class Score>
std::size_t argmax_random_tie(std::size_t count, Score score, RandomSource& rng)
{
    std::size_t best = 0;
    auto best_value = score(0);
    std::uint64_t ties = 1;
    for (std::size_t i = 1; i < count; ++i) {
        const auto v = score(i);
        if (v > best_value) {
            best = i;
            best_value = v;
            ties = 1;
        } else if (v == best_value) {
            ++ties;
            if (rng.uniform_index(ties) == 0) {
                best = i;
            }
        }
    }
    return best;
}

} // namespace detail

/// Offspring of one (1+(λ,λ)) GSEMO iteration before archive update.
struct OpllProposal {
    std::size_t parent_index = 0;
    std::size_t flips = 0;
    /// λ crossover offspring of (x, x+) followed by λ of (x, x-).
    std::vector<Individual> offspring;
};

/// Mutation and crossover phases of one (1+(λ,λ)) GSEMO iteration: picks a
/// uniform parent, creates λ mutants that each flip ℓ ~ Bin(n, k/n) bits,
/// selects the f1- and f2-maximal mutants (independent uniform tie-breaks),
/// and creates λ biased-crossover offspring from each. Costs 3λ evaluations.
template <BiObjectiveProblem P, Archive A>
OpllProposal propose_opll_offspring(const P& problem, const A& archive, const IterationParams& params,
                                    RandomSource& rng)
{
    const std::size_t n = problem.length();
    OpllProposal out;
    out.parent_index = static_cast<std::size_t>(rng.uniform_index(archive.size()));
    const Individual& parent = archive.members()[out.parent_index];
    out.flips = static_cast<std::size_t>(sample_binomial(n, params.k / static_cast<double>(n), rng));

    std::vector<Individual> mutants;
    mutants.reserve(params.lambda);
    for (std::size_t i = 0; i < params.lambda; ++i) {
        auto g = flip_exact(parent.genotype, out.flips, rng);
        auto f = problem.evaluate(g);
        mutants.push_back({std::move(g), f});
    }
    const auto best1 = detail::argmax_random_tie(
        mutants.size(), [&](std::size_t i) { return mutants[i].objectives.f1; }, rng);
    const auto best2 = detail::argmax_random_tie(
        mutants.size(), [&](std::size_t i) { return mutants[i].objectives.f2; }, rng);

    out.offspring.reserve(2 * params.lambda);
    for (auto winner : {best1, best2}) {
        for (auto& g : biased_crossover(parent.genotype, mutants[winner].genotype, params.c, params.lambda, rng)) {
            auto f = problem.evaluate(g);
            out.offspring.push_back({std::move(g), f});
        }
    }
    return out;
}

/// Classic GSEMO: uniform parent, standard bit-wise mutation with rate 1/n,
/// one evaluation per iteration plus one for the initial individual.
template <BiObjectiveProblem P, Archive A, class Observer = NoObserver>
RunRecord run_gsemo(const P& problem, A archive, const RunConfig& cfg, std::size_t front_size,
                    Observer&& observe = {})
{
    const std::size_t n = problem.length();
    RandomSource rng(cfg.seed);
    RunRecord rec;
    rec.seed = cfg.seed;
    detail::MilestoneTracker milestones(cfg.milestones);

    auto x = random_bitstring(n, rng);
    auto fx = problem.evaluate(x);
    archive.insert({std::move(x), fx});
    rec.total_evaluations = 1;
    milestones.observe(archive.coverage(), rec.total_evaluations, rec.milestones);

    const double rate = 1.0 / static_cast<double>(n);
    while (archive.coverage() < front_size) {
        if (rec.total_evaluations + 1 > cfg.budget) {
            break;
        }
        const auto before = archive.coverage();
        const Individual& parent = archive.random_member(rng);
        auto y = bitwise_mutation(parent.genotype, rate, rng);
        auto fy = problem.evaluate(y);
        archive.insert({std::move(y), fy});
        ++rec.total_evaluations;
        ++rec.iterations;
        detect_success(before, archive.coverage());
        milestones.observe(archive.coverage(), rec.total_evaluations, rec.milestones);
        observe(archive, IterationView{rec.iterations, rec.total_evaluations, IterationParams{}, archive.coverage()});
    }
    rec.final_coverage = archive.coverage();
    rec.status = rec.final_coverage >= front_size ? RunStatus::covered : RunStatus::budget_exhausted;
    return rec;
}

/// (1+(λ,λ)) GSEMO with static, state-dependent or one-fifth-rule control.
/// All 2λ crossover offspring go through the archive in order; mutants are
/// evaluated but never inserted.
template <BiObjectiveProblem P, Archive A, class Observer = NoObserver>
RunRecord run_opll_gsemo(const P& problem, A archive, const RunConfig& cfg, std::size_t front_size,
                         Observer&& observe = {})
{
    validate(cfg);
    const std::size_t n = problem.length();
    const auto& ctl = cfg.controller;
    RandomSource rng(cfg.seed);
    RunRecord rec;
    rec.seed = cfg.seed;
    detail::MilestoneTracker milestones(cfg.milestones);

    std::optional<IterationParams> fixed;
    if (ctl.mode == ControllerMode::static_params) {
        fixed = static_params(ctl.k.value_or(*ctl.lambda), *ctl.lambda, ctl.c);
    }
    ControllerState state;
    if (ctl.mode == ControllerMode::one_fifth) {
        state = make_one_fifth_state(n, ctl.update_strength, ctl.lambda.value_or(1.0));
    }

    auto x = random_bitstring(n, rng);
    auto fx = problem.evaluate(x);
    archive.insert({std::move(x), fx});
    rec.total_evaluations = 1;
    milestones.observe(archive.coverage(), rec.total_evaluations, rec.milestones);

    while (archive.coverage() < front_size) {
        double lambda_real = 0.0;
        IterationParams params;
        switch (ctl.mode) {
        case ControllerMode::static_params:
            params = *fixed;
            lambda_real = *ctl.lambda;
            break;
        case ControllerMode::state_dependent: {
            const auto o1 = gap_statistic(archive, 1);
            const auto o2 = gap_statistic(archive, 2);
            if (!o1 && !o2) {
                throw std::logic_error("no gap statistic although the front is not covered");
            }
            lambda_real = state_dependent_lambda(n, o1, o2);
            params = realize_params(lambda_real);
            break;
        }
        case ControllerMode::one_fifth:
            lambda_real = state.lambda_real;
            params = realize_params(lambda_real);
            break;
        case ControllerMode::fitness_dependent:
            throw std::logic_error("fitness-dependent control reached the GSEMO driver");
        }

        const std::uint64_t cost = 3 * static_cast<std::uint64_t>(params.lambda);
        if (rec.total_evaluations + cost > cfg.budget) {
            break;
        }
        const auto before = archive.coverage();
        auto proposal = propose_opll_offspring(problem, archive, params, rng);
        for (auto& y : proposal.offspring) {
            archive.insert(std::move(y));
        }
        rec.total_evaluations += cost;
        ++rec.iterations;
        if (cfg.record_lambda_trajectory) {
            rec.lambda_trajectory.push_back(lambda_real);
        }
        const bool success = detect_success(before, archive.coverage());
        if (ctl.mode == ControllerMode::one_fifth) {
            state = one_fifth_update(state, success, n);
        }
        milestones.observe(archive.coverage(), rec.total_evaluations, rec.milestones);
        observe(archive, IterationView{rec.iterations, rec.total_evaluations, params, archive.coverage()});
    }
    rec.final_coverage = archive.coverage();
    rec.status = rec.final_coverage >= front_size ? RunStatus::covered : RunStatus::budget_exhausted;
    return rec;
}

/// Single-objective (1+(λ,λ)) GA with static or fitness-dependent λ. Each
/// iteration costs 2λ evaluations; the parent's value is reused. Milestones
/// and final_coverage refer to fitness levels.
template <SingleObjectiveProblem P, class Observer = NoObserver>
RunRecord run_opll_ga(const P& problem, const RunConfig& cfg, Observer&& observe = {})
{
    validate(cfg);
    const std::size_t n = problem.length();
    const auto& ctl = cfg.controller;
    RandomSource rng(cfg.seed);
    RunRecord rec;
    rec.seed = cfg.seed;
    detail::MilestoneTracker milestones(cfg.milestones);

    auto x = random_bitstring(n, rng);
    auto fx = problem.evaluate(x);
    rec.total_evaluations = 1;
    milestones.observe(static_cast<std::size_t>(std::max<std::int64_t>(fx, 0)), 1, rec.milestones);

    std::vector<BitString> mutants;
    std::vector<std::int64_t> values;
    while (fx < problem.optimum()) {
        double lambda_real = 0.0;
        IterationParams params;
        if (ctl.mode == ControllerMode::static_params) {
            lambda_real = *ctl.lambda;
            params = static_params(ctl.k.value_or(lambda_real), lambda_real, ctl.c);
        } else {
            lambda_real = fitness_dependent_lambda(n, static_cast<std::size_t>(std::clamp<std::int64_t>(
                                                         fx, 0, static_cast<std::int64_t>(n))));
            params = realize_params(lambda_real);
        }
        const std::uint64_t cost = 2 * static_cast<std::uint64_t>(params.lambda);
        if (rec.total_evaluations + cost > cfg.budget) {
            break;
        }

        const auto flips = static_cast<std::size_t>(sample_binomial(n, params.k / static_cast<double>(n), rng));
        mutants.clear();
        values.clear();
        for (std::size_t i = 0; i < params.lambda; ++i) {
            mutants.push_back(flip_exact(x, flips, rng));
            values.push_back(problem.evaluate(mutants.back()));
        }
        const auto winner = detail::argmax_random_tie(mutants.size(), [&](std::size_t i) { return values[i]; }, rng);
        auto children = biased_crossover(x, mutants[winner], params.c, params.lambda, rng);
        values.clear();
        for (const auto& child : children) {
            values.push_back(problem.evaluate(child));
        }
        const auto best = detail::argmax_random_tie(children.size(), [&](std::size_t i) { return values[i]; }, rng);

        rec.total_evaluations += cost;
        ++rec.iterations;
        if (cfg.record_lambda_trajectory) {
            rec.lambda_trajectory.push_back(lambda_real);
        }
        if (values[best] >= fx) {
            x = std::move(children[best]);
            fx = values[best];
        }
        milestones.observe(static_cast<std::size_t>(std::max<std::int64_t>(fx, 0)), rec.total_evaluations,
                           rec.milestones);
        observe(x, IterationView{rec.iterations, rec.total_evaluations, params, static_cast<std::size_t>(fx)});
    }
    rec.final_coverage = static_cast<std::size_t>(std::max<std::int64_t>(fx, 0));
    rec.status = fx >= problem.optimum() ? RunStatus::covered : RunStatus::budget_exhausted;
    return rec;
}

/// Resolves the benchmark by name and runs the configured driver.
inline RunRecord run(const RunConfig& cfg)
{
    validate(cfg);
    const auto& registry = BenchmarkRegistry::instance();
    if (cfg.algorithm == AlgorithmKind::opll_ga) {
        return run_opll_ga(registry.make_single_objective(cfg.benchmark, cfg.n), cfg);
    }
    const auto problem = registry.make_bi_objective(cfg.benchmark, cfg.n);
    const auto front = pareto_front_size(problem);
    const bool indexed = cfg.archive == ArchiveKind::indexed
        || (cfg.archive == ArchiveKind::automatic && cfg.benchmark == "oneminmax");
    auto dispatch = [&](auto archive) {
        return cfg.algorithm == AlgorithmKind::gsemo ? run_gsemo(problem, std::move(archive), cfg, front)
                                                     : run_opll_gsemo(problem, std::move(archive), cfg, front);
    };
    return indexed ? dispatch(IndexedFrontArchive(cfg.n)) : dispatch(ParetoArchive(cfg.n));
}

} // namespace moea_lab

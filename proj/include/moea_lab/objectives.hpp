#pragma once

#include "bitstring.hpp"

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace moea_lab {

/// Values of a bi-objective function; both objectives are maximized.
struct ObjectivePair {
    std::int64_t f1 = 0;
    std::int64_t f2 = 0;

    friend bool operator==(const ObjectivePair&, const ObjectivePair&) = default;
};

/// a ⪰ b: a is at least as good as b in both objectives.
constexpr bool weakly_dominates(const ObjectivePair& a, const ObjectivePair& b) noexcept
{
    return a.f1 >= b.f1 && a.f2 >= b.f2;
}

constexpr bool strictly_dominates(const ObjectivePair& a, const ObjectivePair& b) noexcept
{
    return weakly_dominates(a, b) && (a.f1 > b.f1 || a.f2 > b.f2);
}

/// Objective b ∈ {1, 2} of a pair.
constexpr std::int64_t objective(const ObjectivePair& v, int b)
{
    if (b == 1) {
        return v.f1;
    }
    if (b == 2) {
        return v.f2;
    }
    throw std::invalid_argument("objective index must be 1 or 2");
}

inline std::int64_t one_max(const BitString& x) noexcept { return static_cast<std::int64_t>(x.count_ones()); }

inline ObjectivePair one_min_max(const BitString& x) noexcept
{
    const auto ones = one_max(x);
    return {ones, static_cast<std::int64_t>(x.size()) - ones};
}

template <class P>
concept BiObjectiveProblem = requires(const P& p, const BitString& x) {
    { p.length() } -> std::convertible_to<std::size_t>;
    { p.evaluate(x) } -> std::convertible_to<ObjectivePair>;
};

template <class P>
concept SingleObjectiveProblem = requires(const P& p, const BitString& x) {
    { p.length() } -> std::convertible_to<std::size_t>;
    { p.evaluate(x) } -> std::convertible_to<std::int64_t>;
    { p.optimum() } -> std::convertible_to<std::int64_t>;
};

/// A named bi-objective benchmark on bit strings of fixed length.
class BiObjectiveFunction {
public:
    using evaluator = std::function<ObjectivePair(const BitString&)>;

    BiObjectiveFunction(std::string name, std::size_t n, evaluator eval, std::optional<std::size_t> front_size = {})
        : name_(std::move(name)), n_(n), eval_(std::move(eval)), front_size_(front_size)
    {
        if (n_ == 0) {
            throw std::invalid_argument("benchmark length must be positive");
        }
    }

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t length() const noexcept { return n_; }
    [[nodiscard]] ObjectivePair evaluate(const BitString& x) const
    {
        if (x.size() != n_) {
            throw std::invalid_argument("benchmark '" + name_ + "': input length mismatch");
        }
        return eval_(x);
    }
    /// Size of the Pareto front when known in closed form.
    [[nodiscard]] std::optional<std::size_t> known_front_size() const noexcept { return front_size_; }

private:
    std::string name_;
    std::size_t n_;
    evaluator eval_;
    std::optional<std::size_t> front_size_;
};

/// A named single-objective (maximization) benchmark.
class SingleObjectiveFunction {
public:
    using evaluator = std::function<std::int64_t(const BitString&)>;

    SingleObjectiveFunction(std::string name, std::size_t n, evaluator eval, std::int64_t optimum)
        : name_(std::move(name)), n_(n), eval_(std::move(eval)), optimum_(optimum)
    {
        if (n_ == 0) {
            throw std::invalid_argument("benchmark length must be positive");
        }
    }

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t length() const noexcept { return n_; }
    [[nodiscard]] std::int64_t evaluate(const BitString& x) const
    {
        if (x.size() != n_) {
            throw std::invalid_argument("benchmark '" + name_ + "': input length mismatch");
        }
        return eval_(x);
    }
    [[nodiscard]] std::int64_t optimum() const noexcept { return optimum_; }

private:
    std::string name_;
    std::size_t n_;
    evaluator eval_;
    std::int64_t optimum_;
};

inline BiObjectiveFunction make_one_min_max(std::size_t n)
{
    return {"oneminmax", n, [](const BitString& x) { return one_min_max(x); }, n + 1};
}

inline SingleObjectiveFunction make_one_max(std::size_t n)
{
    return {"onemax", n, [](const BitString& x) { return one_max(x); }, static_cast<std::int64_t>(n)};
}

/// Name-keyed benchmark factories. New benchmarks register here.
class BenchmarkRegistry {
public:
    using bi_factory = std::function<BiObjectiveFunction(std::size_t)>;
    using single_factory = std::function<SingleObjectiveFunction(std::size_t)>;

    static BenchmarkRegistry& instance()
    {
        static BenchmarkRegistry registry;
        return registry;
    }

    void add(const std::string& name, bi_factory f) { bi_[name] = std::move(f); }
    void add(const std::string& name, single_factory f) { single_[name] = std::move(f); }

    [[nodiscard]] bool is_bi_objective(const std::string& name) const { return bi_.contains(name); }
    [[nodiscard]] bool is_single_objective(const std::string& name) const { return single_.contains(name); }

    [[nodiscard]] BiObjectiveFunction make_bi_objective(const std::string& name, std::size_t n) const
    {
        auto it = bi_.find(name);
        if (it == bi_.end()) {
            throw std::invalid_argument("unknown bi-objective benchmark '" + name + "'");
        }
        return it->second(n);
    }

    [[nodiscard]] SingleObjectiveFunction make_single_objective(const std::string& name, std::size_t n) const
    {
        auto it = single_.find(name);
        if (it == single_.end()) {
            throw std::invalid_argument("unknown single-objective benchmark '" + name + "'");
        }
        return it->second(n);
    }

private:
    BenchmarkRegistry()
    {
        add("oneminmax", bi_factory(make_one_min_max));
        add("onemax", single_factory(make_one_max));
    }

    std::map<std::string, bi_factory> bi_;
    std::map<std::string, single_factory> single_;
};

/// Number of points on the Pareto front. Only benchmarks with a closed-form
/// front (OneMinMax: n + 1) are accepted.
inline std::size_t pareto_front_size(const BiObjectiveFunction& f)
{
    if (auto size = f.known_front_size()) {
        return *size;
    }
    throw std::invalid_argument("no closed-form Pareto front for benchmark '" + f.name() + "'");
}

} // namespace moea_lab

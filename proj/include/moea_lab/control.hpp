#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace moea_lab {

enum class ControllerMode { static_params, fitness_dependent, state_dependent, one_fifth };

inline std::string_view to_string(ControllerMode m) noexcept
{
    switch (m) {
    case ControllerMode::static_params: return "static";
    case ControllerMode::fitness_dependent: return "fitness-dependent";
    case ControllerMode::state_dependent: return "state-dependent";
    case ControllerMode::one_fifth: return "one-fifth";
    }
    return "?";
}

inline ControllerMode parse_controller_mode(std::string_view s)
{
    if (s == "static") return ControllerMode::static_params;
    if (s == "fitness-dependent") return ControllerMode::fitness_dependent;
    if (s == "state-dependent") return ControllerMode::state_dependent;
    if (s == "one-fifth") return ControllerMode::one_fifth;
    throw std::invalid_argument("unknown controller '" + std::string(s) + "'");
}

/// Parameters of one (1+(λ,λ)) iteration: offspring count per phase, mutation
/// strength (flip count ~ Bin(n, k/n)) and crossover bias.
struct IterationParams {
    std::size_t lambda = 1;
    double k = 1.0;
    double c = 1.0;
};

/// Nearest integer, halves rounded up, never below 1.
inline std::size_t round_lambda(double lambda_real)
{
    const double r = std::floor(lambda_real + 0.5);
    return r < 1.0 ? 1 : static_cast<std::size_t>(r);
}

/// Standard setting for a real-valued λ: integer count rounded, k = λ and
/// c = 1/λ from the unrounded value.
inline IterationParams realize_params(double lambda_real)
{
    if (!(lambda_real >= 1.0)) {
        throw std::invalid_argument("realize_params: lambda must be at least 1");
    }
    return {round_lambda(lambda_real), lambda_real, 1.0 / lambda_real};
}

/// Fixed parameters. `lambda_real` is rounded for the offspring count; c
/// defaults to 1/k.
inline IterationParams static_params(double k, double lambda_real, std::optional<double> c = {})
{
    if (!(k >= 1.0)) {
        throw std::invalid_argument("static parameters: k must be at least 1");
    }
    if (!(lambda_real >= 1.0)) {
        throw std::invalid_argument("static parameters: lambda must be at least 1");
    }
    const double bias = c.value_or(1.0 / k);
    if (!(bias > 0.0 && bias <= 1.0)) {
        throw std::invalid_argument("static parameters: c must lie in (0, 1]");
    }
    return {round_lambda(lambda_real), k, bias};
}

/// sqrt(n / (n - f(x))); at the optimum (f(x) = n) the value is capped at n.
inline double fitness_dependent_lambda(std::size_t n, std::size_t fx)
{
    if (fx > n) {
        throw std::invalid_argument("fitness_dependent_lambda: fitness exceeds n");
    }
    if (fx == n) {
        return static_cast<double>(n);
    }
    return std::sqrt(static_cast<double>(n) / static_cast<double>(n - fx));
}

/// sqrt(n / (n - m)) with m the smaller of the available gap statistics.
inline double state_dependent_lambda(std::size_t n, std::optional<std::size_t> o1, std::optional<std::size_t> o2)
{
    if (!o1 && !o2) {
        throw std::invalid_argument("state_dependent_lambda: front already covered on both sides");
    }
    std::size_t m = o1 && o2 ? std::min(*o1, *o2) : (o1 ? *o1 : *o2);
    if (m >= n) {
        throw std::invalid_argument("state_dependent_lambda: gap value must be below n");
    }
    return std::sqrt(static_cast<double>(n) / static_cast<double>(n - m));
}

struct ControllerState {
    ControllerMode mode = ControllerMode::one_fifth;
    double lambda_real = 1.0;
    double update_strength = 1.5;
    double lambda_min = 1.0;
    double lambda_max = 1.0;
};

inline ControllerState make_one_fifth_state(std::size_t n, double update_strength = 1.5, double initial_lambda = 1.0)
{
    if (!(update_strength > 1.0)) {
        throw std::invalid_argument("one-fifth rule: update strength must exceed 1");
    }
    if (n == 0) {
        throw std::invalid_argument("one-fifth rule: n must be positive");
    }
    ControllerState s;
    s.mode = ControllerMode::one_fifth;
    s.update_strength = update_strength;
    s.lambda_min = 1.0;
    s.lambda_max = static_cast<double>(n);
    s.lambda_real = std::clamp(initial_lambda, s.lambda_min, s.lambda_max);
    return s;
}

/// Success divides λ by F; failure multiplies it by F^(1/(5n-1)). The result
/// is clamped to [1, n].
inline ControllerState one_fifth_update(ControllerState s, bool success, std::size_t n)
{
    if (s.mode != ControllerMode::one_fifth) {
        throw std::invalid_argument("one_fifth_update: controller is not in one-fifth mode");
    }
    if (success) {
        s.lambda_real = std::max(1.0, s.lambda_real / s.update_strength);
    } else {
        const double step = std::pow(s.update_strength, 1.0 / (5.0 * static_cast<double>(n) - 1.0));
        s.lambda_real = std::min(static_cast<double>(n), s.lambda_real * step);
    }
    return s;
}

/// An iteration succeeds when it covers strictly more front points. Coverage
/// can never shrink; a decrease means the archive invariant was broken.
inline bool detect_success(std::size_t coverage_before, std::size_t coverage_after)
{
    if (coverage_after < coverage_before) {
        throw std::logic_error("coverage decreased: archive invariant violated");
    }
    return coverage_after > coverage_before;
}

} // namespace moea_lab

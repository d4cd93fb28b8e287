#include <moea_lab/control.hpp>
#include <moea_lab/random.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <optional>

using namespace moea_lab;

TEST(StaticParams, DefaultsAndValidation)
{
    const auto p = static_params(2.0, 2.0);
    EXPECT_EQ(p.lambda, 2U);
    EXPECT_DOUBLE_EQ(p.c, 0.5);

    const auto q = static_params(1.0, 1.0, 1.0);
    EXPECT_EQ(q.lambda, 1U);
    EXPECT_DOUBLE_EQ(q.k, 1.0);
    EXPECT_DOUBLE_EQ(q.c, 1.0);

    const double lambda = 7.0 * std::log(100.0);
    const auto r = static_params(lambda, lambda);
    EXPECT_EQ(r.lambda, 32U);
    EXPECT_DOUBLE_EQ(r.c, 1.0 / lambda);

    EXPECT_THROW(static_params(0.5, 2.0), std::invalid_argument);
    EXPECT_THROW(static_params(2.0, 0.0), std::invalid_argument);
    EXPECT_THROW(static_params(2.0, 2.0, 0.0), std::invalid_argument);
    EXPECT_THROW(static_params(2.0, 2.0, 1.5), std::invalid_argument);
}

TEST(FitnessDependentLambda, Values)
{
    EXPECT_DOUBLE_EQ(fitness_dependent_lambda(100, 0), 1.0);
    EXPECT_DOUBLE_EQ(fitness_dependent_lambda(100, 99), 10.0);
    EXPECT_DOUBLE_EQ(fitness_dependent_lambda(100, 96), 5.0);
    EXPECT_DOUBLE_EQ(fitness_dependent_lambda(100, 100), 100.0);
    EXPECT_THROW(fitness_dependent_lambda(100, 101), std::invalid_argument);
}

TEST(FitnessDependentLambda, MonotoneIncreasing)
{
    for (std::size_t n : {1U, 7U, 100U}) {
        for (std::size_t f = 1; f < n; ++f) {
            ASSERT_GT(fitness_dependent_lambda(n, f), fitness_dependent_lambda(n, f - 1));
        }
    }
}

TEST(StateDependentLambda, Values)
{
    EXPECT_NEAR(state_dependent_lambda(100, 50, 50), std::sqrt(2.0), 1e-12);
    EXPECT_DOUBLE_EQ(state_dependent_lambda(100, 99, std::nullopt), 10.0);
    EXPECT_DOUBLE_EQ(state_dependent_lambda(100, std::nullopt, 99), 10.0);
    EXPECT_DOUBLE_EQ(state_dependent_lambda(16, 12, 14), 2.0);
    EXPECT_THROW(state_dependent_lambda(16, std::nullopt, std::nullopt), std::invalid_argument);
}

TEST(StateDependentLambda, MonotoneInMinimumGap)
{
    const std::size_t n = 50;
    for (std::size_t m = 1; m < n; ++m) {
        ASSERT_GE(state_dependent_lambda(n, m, n - 1), state_dependent_lambda(n, m - 1, n - 1));
    }
}

TEST(RealizeParams, RoundingRule)
{
    auto p = realize_params(2.4);
    EXPECT_EQ(p.lambda, 2U);
    EXPECT_DOUBLE_EQ(p.k, 2.4);
    EXPECT_DOUBLE_EQ(p.c, 1.0 / 2.4);
    EXPECT_EQ(realize_params(2.5).lambda, 3U);
    p = realize_params(1.0);
    EXPECT_EQ(p.lambda, 1U);
    EXPECT_DOUBLE_EQ(p.k, 1.0);
    EXPECT_DOUBLE_EQ(p.c, 1.0);
    EXPECT_THROW(realize_params(0.99), std::invalid_argument);
}

TEST(OneFifth, UpdateExamples)
{
    auto s = make_one_fifth_state(100, 1.5, 10.0);
    EXPECT_NEAR(one_fifth_update(s, true, 100).lambda_real, 10.0 / 1.5, 1e-12);

    s = make_one_fifth_state(100, 1.5);
    EXPECT_DOUBLE_EQ(s.lambda_real, 1.0);
    EXPECT_DOUBLE_EQ(one_fifth_update(s, true, 100).lambda_real, 1.0);

    s = make_one_fifth_state(100, 1.5, 100.0);
    EXPECT_DOUBLE_EQ(one_fifth_update(s, false, 100).lambda_real, 100.0);

    EXPECT_THROW(make_one_fifth_state(100, 1.0), std::invalid_argument);
    ControllerState wrong;
    wrong.mode = ControllerMode::static_params;
    EXPECT_THROW(one_fifth_update(wrong, true, 10), std::invalid_argument);
}

TEST(OneFifth, FailuresThenSuccessRoundTrip)
{
    for (std::size_t n : {1U, 10U, 100U, 1000U}) {
        for (double F : {1.1, 1.5, 2.0}) {
            auto s = make_one_fifth_state(n, F, std::min<double>(2.0, static_cast<double>(n)));
            const double start = s.lambda_real;
            if (start * F > static_cast<double>(n)) {
                continue; // upper clamp would be hit
            }
            for (std::size_t i = 0; i < 5 * n - 1; ++i) {
                s = one_fifth_update(s, false, n);
            }
            EXPECT_NEAR(s.lambda_real, start * F, 1e-9 * start * F);
            s = one_fifth_update(s, true, n);
            EXPECT_NEAR(s.lambda_real / start, 1.0, 1e-9) << "n=" << n << " F=" << F;
        }
    }
}

TEST(OneFifth, StaysInRange)
{
    RandomSource rng(12);
    const std::size_t n = 20;
    auto s = make_one_fifth_state(n, 1.5);
    for (int i = 0; i < 200'000; ++i) {
        s = one_fifth_update(s, rng.uniform_index(100) == 0, n);
        ASSERT_GE(s.lambda_real, 1.0);
        ASSERT_LE(s.lambda_real, static_cast<double>(n));
    }
}

TEST(DetectSuccess, StrictIncrease)
{
    EXPECT_FALSE(detect_success(5, 5));
    EXPECT_TRUE(detect_success(5, 6));
    EXPECT_TRUE(detect_success(5, 7));
    EXPECT_THROW(detect_success(5, 4), std::logic_error);
}

TEST(ControllerMode, Parsing)
{
    for (auto m : {ControllerMode::static_params, ControllerMode::fitness_dependent, ControllerMode::state_dependent,
                   ControllerMode::one_fifth}) {
        EXPECT_EQ(parse_controller_mode(to_string(m)), m);
    }
    EXPECT_THROW(parse_controller_mode("adaptive"), std::invalid_argument);
}

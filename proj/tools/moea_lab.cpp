#include <moea_lab/moea_lab.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace moea_lab;

void print_rows(const std::vector<SummaryRow>& rows) { std::cout << summary_csv(rows); }

void print_report(const BoundReport& r)
{
    std::printf("n=%zu d=%zu lambda=%zu k=%.6g c=%.6g trials=%llu\n", r.n, r.d, r.lambda, r.k, r.c,
                static_cast<unsigned long long>(r.trials));
    std::printf("estimate=%.6g (%llu hits)  phase-product bound=%.6g  %s\n", r.estimate,
                static_cast<unsigned long long>(r.successes), r.bound, r.marginal_pass ? "pass" : "FAIL");
    for (const auto& c : r.conditional) {
        std::printf("  l=%zu trials=%llu estimate=%.6g bound=%.6g %s\n", c.flips,
                    static_cast<unsigned long long>(c.trials),
                    static_cast<double>(c.successes) / static_cast<double>(c.trials), c.bound,
                    c.pass ? "pass" : "FAIL");
    }
    if (std::isnan(r.unit_step_bound)) {
        std::printf("step bound: not applicable (needs lambda, k >= 2 and d < n)\n");
    } else {
        std::printf("step bound (C=1)=%.6g  calibrated C=%.6g  %s\n", r.unit_step_bound, r.calibrated_C,
                    r.step_pass ? "pass" : "FAIL");
    }
    std::printf("%s\n", r.pass ? "PASS" : "FAIL");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Experiment harness for GSEMO and (1+(lambda,lambda)) variants on bit-string benchmarks"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run one algorithm configuration several times");
    std::string algorithm = "opll-gsemo";
    std::string benchmark = "oneminmax";
    std::size_t n = 0;
    std::string controller = "static";
    std::string lambda_text;
    std::string k_text;
    std::optional<double> c;
    double update_strength = 1.5;
    std::size_t runs = 1;
    std::uint64_t seed = 1;
    std::uint64_t budget = default_budget;
    std::string out;
    std::string log_base = "e";
    std::size_t threads = 0;
    run_cmd->add_option("--algorithm", algorithm, "gsemo | opll-ga | opll-gsemo")->required();
    run_cmd->add_option("--benchmark", benchmark, "oneminmax | onemax")->required();
    run_cmd->add_option("--n", n, "problem length")->required()->check(CLI::PositiveNumber);
    run_cmd->add_option("--controller", controller, "static | state-dependent | one-fifth | fitness-dependent");
    run_cmd->add_option("--lambda", lambda_text, "lambda as a number or '<coef>log', e.g. 7log");
    run_cmd->add_option("--k", k_text, "mutation strength (defaults to lambda)");
    run_cmd->add_option("--c", c, "crossover bias (defaults to 1/k)");
    run_cmd->add_option("--update-strength", update_strength, "one-fifth rule update strength F > 1");
    run_cmd->add_option("--runs", runs, "independent runs")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", seed, "base seed");
    run_cmd->add_option("--budget", budget, "evaluation cap per run")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", out, "summary CSV path (per-run records go to <stem>_runs.csv)");
    run_cmd->add_option("--log-base", log_base, "logarithm base for '<coef>log' values (e, 2, ...)");
    run_cmd->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run an experiment described by a key-value spec file");
    std::string spec_path;
    sweep_cmd->add_option("--spec", spec_path, "spec file")->required();

    // validate-bounds
    auto* bounds_cmd = app.add_subcommand("validate-bounds", "Monte Carlo check of the per-iteration success bounds");
    std::size_t bn = 0;
    std::size_t bd = 0;
    std::size_t blambda = 0;
    std::optional<double> bk;
    std::optional<double> bc;
    std::uint64_t trials = 100'000;
    std::uint64_t bseed = 1;
    bounds_cmd->add_option("--n", bn, "problem length")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--d", bd, "distance d: parent at (n-d, d)")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--lambda", blambda, "offspring count")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--k", bk, "mutation strength (defaults to lambda)");
    bounds_cmd->add_option("--c", bc, "crossover bias (defaults to 1/k)");
    bounds_cmd->add_option("--trials", trials, "simulated iterations (>= 10000)");
    bounds_cmd->add_option("--seed", bseed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run_cmd) {
            ExperimentSpec spec;
            spec.sizes = {n};
            spec.runs = runs;
            spec.base_seed = seed;
            spec.budget = budget;
            spec.out = out;
            spec.log_base = parse_log_base(log_base);
            spec.threads = threads;
            Arm arm;
            arm.name = algorithm;
            arm.algorithm = parse_algorithm(algorithm);
            arm.benchmark = benchmark;
            arm.controller = parse_controller_mode(controller);
            if (!lambda_text.empty()) {
                arm.lambda = parse_scaled_value(lambda_text);
            }
            if (!k_text.empty()) {
                arm.k = parse_scaled_value(k_text);
            }
            arm.c = c;
            arm.update_strength = update_strength;
            spec.arms = {arm};
            print_rows(run_experiment(spec).rows);
            return 0;
        }
        if (*sweep_cmd) {
            const auto spec = load_experiment_spec(spec_path);
            print_rows(run_experiment(spec).rows);
            return 0;
        }
        if (*bounds_cmd) {
            const double k = bk.value_or(static_cast<double>(blambda));
            RandomSource rng(bseed);
            const auto report = validate_lemma_bounds(bn, bd, blambda, k, bc.value_or(1.0 / k), trials, rng);
            print_report(report);
            return report.pass ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

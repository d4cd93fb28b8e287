// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hpp"

#include <moea_lab/moea_lab.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace moea_lab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Arm make_arm(const std::string& name, AlgorithmKind a, ControllerMode mode, std::optional<ScaledValue> lambda = {})
{
    Arm arm;
    arm.name = name;
    arm.algorithm = a;
    arm.controller = mode;
    arm.lambda = lambda;
    return arm;
}

std::string fmt(double v, int precision = 3)
{
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

Outcome static_speedup_ordering()
{
    ExperimentSpec spec;
    for (std::size_t n = 10; n <= 140; n += 10) {
        spec.sizes.push_back(n);
    }
    spec.runs = 10;
    spec.base_seed = 2022;
    spec.arms = {make_arm("gsemo", AlgorithmKind::gsemo, ControllerMode::static_params),
                 make_arm("opll-gsemo", AlgorithmKind::opll_gsemo, ControllerMode::static_params,
                          parse_scaled_value("7log"))};
    const auto res = run_experiment(spec);
    const auto table = speedup_table(rows_for_arm(res.rows, "gsemo"), rows_for_arm(res.rows, "opll-gsemo"));

    Outcome o{true, {}};
    for (const auto& r : res.rows) {
        if (r.covered != r.runs) {
            o.pass = false;
            o.detail += r.arm + " n=" + std::to_string(r.n) + " not covered; ";
        }
    }
    std::string ratios;
    for (const auto& e : table) {
        ratios += std::to_string(e.n) + ":" + fmt(e.ratio) + " ";
        if (e.n >= 60 && !(e.ratio > 1.0)) {
            o.pass = false;
            o.detail += "no speedup at n=" + std::to_string(e.n) + "; ";
        }
    }
    const double at140 = table.back().ratio;
    if (!(at140 > 3.0)) {
        o.pass = false;
    }
    o.detail += "gsemo/opll ratio at n=140 " + fmt(at140) + " (ratios " + ratios + ")";
    return o;
}

Outcome scaling_gap()
{
    ExperimentSpec spec;
    spec.sizes = {32, 64, 128, 256};
    spec.runs = 20;
    spec.base_seed = 77;
    spec.arms = {make_arm("gsemo", AlgorithmKind::gsemo, ControllerMode::static_params),
                 make_arm("state", AlgorithmKind::opll_gsemo, ControllerMode::state_dependent)};
    const auto res = run_experiment(spec);

    Outcome o{true, {}};
    std::vector<double> g;
    std::vector<double> s;
    for (const auto& r : res.rows) {
        if (r.covered != r.runs) {
            o.pass = false;
        }
        const double scaled = r.mean_evals / (static_cast<double>(r.n) * static_cast<double>(r.n));
        (r.arm == "gsemo" ? g : s).push_back(scaled);
    }
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    const double spread = *hi / *lo;
    bool monotone = true;
    for (std::size_t i = 1; i < g.size(); ++i) {
        monotone = monotone && g[i] > g[i - 1];
    }
    o.pass = o.pass && spread < 2.0 && monotone;
    o.detail = "state-dependent evals/n^2 spread " + fmt(spread) + "; gsemo evals/n^2";
    for (double v : g) {
        o.detail += " " + fmt(v);
    }
    o.detail += monotone ? " (increasing)" : " (NOT increasing)";
    return o;
}

Outcome accounting_identity()
{
    RandomSource rng(404);
    std::size_t checked = 0;
    for (int i = 0; i < 100; ++i) {
        RunConfig cfg;
        cfg.algorithm = AlgorithmKind::opll_gsemo;
        cfg.n = 2 + static_cast<std::size_t>(rng.uniform_index(59));
        const double n = static_cast<double>(cfg.n);
        cfg.controller.lambda = 1.0 + rng.uniform01() * (std::min(n, 12.0) - 1.0);
        const double k = 1.0 + rng.uniform01() * (std::min(n, 12.0) - 1.0);
        cfg.controller.k = k;
        // bias within a factor 2 of the standard 1/k, so no run stalls
        cfg.controller.c = std::min(1.0, (0.5 + 1.5 * rng.uniform01()) / k);
        cfg.seed = rng();
        cfg.archive = rng.bernoulli(0.5) ? ArchiveKind::scan : ArchiveKind::indexed;
        const auto rec = run(cfg);
        if (rec.status != RunStatus::covered) {
            continue;
        }
        ++checked;
        const auto lambda = round_lambda(*cfg.controller.lambda);
        if (rec.total_evaluations != 3 * rec.iterations * lambda + 1) {
            return {false, "mismatch at n=" + std::to_string(cfg.n) + " lambda=" + fmt(*cfg.controller.lambda)};
        }
    }
    return {checked == 100, std::to_string(checked) + "/100 completed runs satisfy evals = 3*t*lambda + 1"};
}

Outcome success_bound_grid()
{
    Outcome o{true, {}};
    RandomSource master(31337);
    double min_c = std::numeric_limits<double>::infinity();
    int cells = 0;
    for (std::size_t n : {20U, 50U}) {
        for (std::size_t d : {std::size_t{1}, n / 4, n / 2}) {
            for (std::size_t lambda : {2U, 4U, 8U}) {
                auto rng = master.derive("cell" + std::to_string(n) + "/" + std::to_string(d) + "/"
                                         + std::to_string(lambda));
                const double k = static_cast<double>(lambda);
                const auto r = validate_lemma_bounds(n, d, lambda, k, 1.0 / k, 100'000, rng);
                ++cells;
                min_c = std::min(min_c, r.calibrated_C);
                if (!r.pass) {
                    o.pass = false;
                    o.detail += "cell n=" + std::to_string(n) + " d=" + std::to_string(d) + " lambda="
                        + std::to_string(lambda) + " est=" + fmt(r.estimate, 6) + " bound=" + fmt(r.bound, 6)
                        + (r.conditional_pass ? "" : " (conditional)") + "; ";
                }
            }
        }
    }
    o.detail += std::to_string(cells) + " cells, smallest calibrated C " + fmt(min_c);
    return o;
}

Outcome archive_oracle()
{
    std::uint64_t checked = 0;
    const auto exhaustive = oracle::exhaustive_archive_check(4, 6, checked);
    const auto random = oracle::random_archive_check(2024, 10'000, 12);
    return {exhaustive == 0 && random == 0,
            std::to_string(checked) + " exhaustive checks (" + std::to_string(exhaustive) + " mismatches), "
                + "10000 random sequences (" + std::to_string(random) + " mismatches)"};
}

Outcome one_fifth_properties()
{
    Outcome o{true, {}};
    RandomSource rng(55);
    const std::size_t sizes[] = {1, 2, 10, 100, 1000};
    std::size_t violations = 0;
    for (std::size_t n : sizes) {
        const double F = 1.0 + 0.01 + rng.uniform01() * 2.0;
        auto s = make_one_fifth_state(n, F);
        for (int i = 0; i < 200'000; ++i) {
            const double p = (i / 10'000) % 2 == 0 ? 0.05 : 0.6;
            s = one_fifth_update(s, rng.bernoulli(p), n);
            if (!(s.lambda_real >= 1.0 && s.lambda_real <= static_cast<double>(n))) {
                ++violations;
            }
        }
    }
    o.pass = violations == 0;
    o.detail = "1e6 updates, " + std::to_string(violations) + " range violations";

    double worst = 0.0;
    for (std::size_t n : {10U, 100U, 1000U}) {
        for (double F : {1.1, 1.5, 2.0}) {
            auto s = make_one_fifth_state(n, F, 2.0);
            for (std::size_t i = 0; i + 1 < 5 * n; ++i) {
                s = one_fifth_update(s, false, n);
            }
            s = one_fifth_update(s, true, n);
            worst = std::max(worst, std::abs(s.lambda_real / 2.0 - 1.0));
        }
    }
    o.pass = o.pass && worst <= 1e-9;
    o.detail += "; round-trip relative error " + fmt(worst);

    std::size_t covered = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RunConfig cfg;
        cfg.algorithm = AlgorithmKind::opll_gsemo;
        cfg.n = 100;
        cfg.seed = seed;
        cfg.controller.mode = ControllerMode::one_fifth;
        covered += run(cfg).status == RunStatus::covered ? 1 : 0;
    }
    o.pass = o.pass && covered == 10;
    o.detail += "; n=100 covered in " + std::to_string(covered) + "/10 runs";
    return o;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism()
{
    const auto dir = std::filesystem::temp_directory_path() / "moea_lab_acceptance";
    std::filesystem::create_directories(dir);
    ExperimentSpec spec;
    spec.sizes = {16, 32, 48};
    spec.runs = 5;
    spec.base_seed = 9;
    spec.arms = {make_arm("gsemo", AlgorithmKind::gsemo, ControllerMode::static_params),
                 make_arm("opll", AlgorithmKind::opll_gsemo, ControllerMode::static_params, parse_scaled_value("7log")),
                 make_arm("state", AlgorithmKind::opll_gsemo, ControllerMode::state_dependent),
                 make_arm("fifth", AlgorithmKind::opll_gsemo, ControllerMode::one_fifth)};
    spec.out = (dir / "a.csv").string();
    spec.threads = 1;
    run_experiment(spec);
    spec.out = (dir / "b.csv").string();
    spec.threads = 3;
    run_experiment(spec);
    const bool same = slurp(dir / "a.csv") == slurp(dir / "b.csv")
        && slurp(dir / "a_runs.csv") == slurp(dir / "b_runs.csv") && !slurp(dir / "a_runs.csv").empty();
    std::filesystem::remove_all(dir);
    return {same, same ? "summary and per-run CSV byte-identical" : "CSV outputs differ"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"static_speedup_ordering", static_speedup_ordering},
        {"scaling_gap", scaling_gap},
        {"evaluation_accounting", accounting_identity},
        {"success_bound_grid", success_bound_grid},
        {"archive_oracle", archive_oracle},
        {"one_fifth_controller", one_fifth_properties},
        {"determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " [" << fmt(secs, 3) << "s] " << o.detail << std::endl;
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

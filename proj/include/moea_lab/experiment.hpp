#pragma once

#include "algorithms.hpp"
#include "random.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <iterator>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <tuple>
#include <vector>

namespace moea_lab {

/// A parameter value that is either a constant or coef · log_base(n).
struct ScaledValue {
    double value = 0.0;
    bool scales_with_log = false;

    [[nodiscard]] double resolve(std::size_t n, double log_base) const
    {
        if (!scales_with_log) {
            return value;
        }
        return value * std::log(static_cast<double>(n)) / std::log(log_base);
    }
};

/// Parses "32", "2.5", "7log" or "log".
inline ScaledValue parse_scaled_value(std::string_view s)
{
    ScaledValue out;
    if (s.size() >= 3 && s.substr(s.size() - 3) == "log") {
        out.scales_with_log = true;
        s.remove_suffix(3);
        if (s.empty()) {
            out.value = 1.0;
            return out;
        }
    }
    const std::string text(s);
    std::size_t used = 0;
    try {
        out.value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(out.value)) {
        throw std::invalid_argument("cannot parse parameter value '" + text + "'");
    }
    return out;
}

/// "e" or a positive number other than 1.
inline double parse_log_base(std::string_view s)
{
    if (s == "e") {
        return std::exp(1.0);
    }
    const auto v = parse_scaled_value(s);
    if (v.scales_with_log || !(v.value > 0.0) || v.value == 1.0) {
        throw std::invalid_argument("invalid log base '" + std::string(s) + "'");
    }
    return v.value;
}

/// One algorithm configuration of an experiment.
struct Arm {
    std::string name;
    AlgorithmKind algorithm = AlgorithmKind::gsemo;
    std::string benchmark = "oneminmax";
    ControllerMode controller = ControllerMode::static_params;
    std::optional<ScaledValue> lambda;
    std::optional<ScaledValue> k;
    std::optional<double> c;
    double update_strength = 1.5;

    /// Run configuration for size n, with seed and budget left for the caller.
    /// Log-scaled λ and k are capped at n, where 7 ln n would otherwise exceed
    /// the string length for small n.
    [[nodiscard]] RunConfig config_for(std::size_t n, double log_base) const
    {
        const auto resolve = [&](const ScaledValue& v) {
            const double r = v.resolve(n, log_base);
            return v.scales_with_log ? std::min(r, static_cast<double>(n)) : r;
        };
        RunConfig cfg;
        cfg.algorithm = algorithm;
        cfg.benchmark = benchmark;
        cfg.n = n;
        cfg.controller.mode = controller;
        if (lambda) {
            cfg.controller.lambda = resolve(*lambda);
        }
        if (k) {
            cfg.controller.k = resolve(*k);
        }
        cfg.controller.c = c;
        cfg.controller.update_strength = update_strength;
        return cfg;
    }
};

struct ExperimentSpec {
    std::vector<std::size_t> sizes;
    std::size_t runs = 10;
    std::vector<Arm> arms;
    std::uint64_t base_seed = 1;
    std::uint64_t budget = default_budget;
    /// Summary CSV path; empty disables file output.
    std::string out;
    double log_base = std::exp(1.0);
    /// Worker threads; 0 picks hardware concurrency.
    std::size_t threads = 0;
};

inline void validate(const ExperimentSpec& spec)
{
    if (spec.runs < 1) {
        throw std::invalid_argument("experiment: runs must be at least 1");
    }
    if (spec.sizes.empty()) {
        throw std::invalid_argument("experiment: no problem sizes");
    }
    for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
        if (spec.sizes[i] == 0 || (i > 0 && spec.sizes[i] <= spec.sizes[i - 1])) {
            throw std::invalid_argument("experiment: sizes must be positive and strictly increasing");
        }
    }
    if (spec.arms.empty()) {
        throw std::invalid_argument("experiment: no arms");
    }
    std::set<std::string> names;
    for (const auto& arm : spec.arms) {
        if (arm.name.empty() || arm.name.find_first_of(",\n\r\"") != std::string::npos) {
            throw std::invalid_argument("experiment: arm names must be non-empty and CSV-safe");
        }
        if (!names.insert(arm.name).second) {
            throw std::invalid_argument("experiment: duplicate arm '" + arm.name + "'");
        }
    }
    if (!(spec.log_base > 0.0) || spec.log_base == 1.0) {
        throw std::invalid_argument("experiment: invalid log base");
    }
}

/// Seed of one run: base ⊕ hash(arm, n, run).
inline std::uint64_t derive_run_seed(std::uint64_t base_seed, std::string_view arm, std::size_t n, std::size_t run)
{
    const auto h = mix64(mix64(fnv1a64(arm)) ^ mix64(static_cast<std::uint64_t>(n) << 32 ^ run));
    return base_seed ^ h;
}

struct SummaryRow {
    std::string arm;
    std::size_t n = 0;
    std::size_t runs = 0;
    std::size_t covered = 0;
    double mean_evals = 0.0;
    double stddev_evals = 0.0;
    std::uint64_t min_evals = 0;
    std::uint64_t max_evals = 0;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct RunEntry {
    std::string arm;
    std::size_t n = 0;
    std::size_t run = 0;
    RunRecord record;
};

struct ExperimentResult {
    std::vector<SummaryRow> rows;
    std::vector<RunEntry> runs;
};

/// Mean, sample standard deviation (runs - 1 denominator; 0 for one run),
/// min and max of the evaluation totals. Runs that exhausted the budget
/// contribute their spent evaluations and show up as covered < runs.
inline SummaryRow summarize(const std::string& arm, std::size_t n, const std::vector<RunRecord>& records)
{
    SummaryRow row;
    row.arm = arm;
    row.n = n;
    row.runs = records.size();
    if (records.empty()) {
        return row;
    }
    row.min_evals = std::numeric_limits<std::uint64_t>::max();
    double sum = 0.0;
    for (const auto& r : records) {
        row.covered += r.status == RunStatus::covered ? 1 : 0;
        sum += static_cast<double>(r.total_evaluations);
        row.min_evals = std::min(row.min_evals, r.total_evaluations);
        row.max_evals = std::max(row.max_evals, r.total_evaluations);
    }
    row.mean_evals = sum / static_cast<double>(records.size());
    if (records.size() > 1) {
        double ss = 0.0;
        for (const auto& r : records) {
            const double dev = static_cast<double>(r.total_evaluations) - row.mean_evals;
            ss += dev * dev;
        }
        row.stddev_evals = std::sqrt(ss / static_cast<double>(records.size() - 1));
    }
    return row;
}

namespace detail {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

inline double parse_double(std::string_view s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad number '" + std::string(s) + "'");
    }
    return v;
}

inline std::uint64_t parse_u64(std::string_view s)
{
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad integer '" + std::string(s) + "'");
    }
    return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace detail

inline constexpr std::string_view summary_csv_header = "arm,n,runs,covered,mean_evals,stddev_evals,min_evals,max_evals";
inline constexpr std::string_view runs_csv_header = "arm,n,run,seed,evals,iterations,status";

inline std::string summary_csv(const std::vector<SummaryRow>& rows)
{
    std::ostringstream os;
    os << summary_csv_header << '\n';
    for (const auto& r : rows) {
        os << r.arm << ',' << r.n << ',' << r.runs << ',' << r.covered << ',' << detail::format_double(r.mean_evals)
           << ',' << detail::format_double(r.stddev_evals) << ',' << r.min_evals << ',' << r.max_evals << '\n';
    }
    return os.str();
}

inline std::string runs_csv(const std::vector<RunEntry>& runs)
{
    std::ostringstream os;
    os << runs_csv_header << '\n';
    for (const auto& e : runs) {
        os << e.arm << ',' << e.n << ',' << e.run << ',' << e.record.seed << ',' << e.record.total_evaluations << ','
           << e.record.iterations << ',' << to_string(e.record.status) << '\n';
    }
    return os.str();
}

inline std::vector<SummaryRow> parse_summary_csv(std::string_view text)
{
    std::vector<SummaryRow> rows;
    bool header = true;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (header) {
            if (line != summary_csv_header) {
                throw std::invalid_argument("summary CSV: unexpected header");
            }
            header = false;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto f = detail::split(line, ',');
        if (f.size() != 8) {
            throw std::invalid_argument("summary CSV: expected 8 fields");
        }
        SummaryRow r;
        r.arm = std::string(f[0]);
        r.n = static_cast<std::size_t>(detail::parse_u64(f[1]));
        r.runs = static_cast<std::size_t>(detail::parse_u64(f[2]));
        r.covered = static_cast<std::size_t>(detail::parse_u64(f[3]));
        r.mean_evals = detail::parse_double(f[4]);
        r.stddev_evals = detail::parse_double(f[5]);
        r.min_evals = detail::parse_u64(f[6]);
        r.max_evals = detail::parse_u64(f[7]);
        rows.push_back(std::move(r));
    }
    if (header) {
        throw std::invalid_argument("summary CSV: missing header");
    }
    return rows;
}

/// Sibling path for per-run records: "dir/name.csv" -> "dir/name_runs.csv".
inline std::filesystem::path runs_path_for(const std::filesystem::path& summary)
{
    auto p = summary;
    p.replace_filename(summary.stem().string() + "_runs" + summary.extension().string());
    return p;
}

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

/// Executes every (arm, n, run) of the spec and aggregates one summary row per
/// (arm, n), in spec order. Runs are spread over worker threads; each run
/// owns its seed, so results do not depend on scheduling.
inline ExperimentResult run_experiment(const ExperimentSpec& spec)
{
    validate(spec);

    struct Job {
        std::size_t arm = 0;
        std::size_t n = 0;
        std::size_t run = 0;
        RunConfig cfg;
    };
    std::vector<Job> jobs;
    std::set<std::uint64_t> seeds;
    for (std::size_t a = 0; a < spec.arms.size(); ++a) {
        for (auto n : spec.sizes) {
            for (std::size_t r = 0; r < spec.runs; ++r) {
                Job job{a, n, r, spec.arms[a].config_for(n, spec.log_base)};
                job.cfg.seed = derive_run_seed(spec.base_seed, spec.arms[a].name, n, r);
                job.cfg.budget = spec.budget;
                validate(job.cfg);
                if (!seeds.insert(job.cfg.seed).second) {
                    throw std::logic_error("seed collision in experiment");
                }
                jobs.push_back(std::move(job));
            }
        }
    }

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const auto i = next.fetch_add(1);
            if (i >= jobs.size()) {
                return;
            }
            try {
                records[i] = run(jobs[i].cfg);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = jobs.size();
            }
        }
    };
    std::size_t threads = spec.threads != 0 ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    ExperimentResult result;
    std::size_t i = 0;
    for (std::size_t a = 0; a < spec.arms.size(); ++a) {
        for (auto n : spec.sizes) {
            std::vector<RunRecord> group(records.begin() + static_cast<std::ptrdiff_t>(i),
                                         records.begin() + static_cast<std::ptrdiff_t>(i + spec.runs));
            for (std::size_t r = 0; r < spec.runs; ++r) {
                result.runs.push_back({spec.arms[a].name, n, r, std::move(records[i + r])});
            }
            result.rows.push_back(summarize(spec.arms[a].name, n, group));
            i += spec.runs;
        }
    }

    if (!spec.out.empty()) {
        const std::filesystem::path out(spec.out);
        write_text(out, summary_csv(result.rows));
        write_text(runs_path_for(out), runs_csv(result.runs));
    }
    return result;
}

/// Rows of one arm, in input order.
inline std::vector<SummaryRow> rows_for_arm(const std::vector<SummaryRow>& rows, std::string_view arm)
{
    std::vector<SummaryRow> out;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [&](const SummaryRow& r) { return r.arm == arm; });
    return out;
}

struct SpeedupEntry {
    std::size_t n = 0;
    double ratio = 0.0;
};

/// mean_evals(a) / mean_evals(b) for every n; both sides must cover the same sizes.
inline std::vector<SpeedupEntry> speedup_table(const std::vector<SummaryRow>& a, const std::vector<SummaryRow>& b)
{
    auto sizes = [](const std::vector<SummaryRow>& rows) {
        std::vector<std::size_t> s;
        for (const auto& r : rows) {
            s.push_back(r.n);
        }
        std::sort(s.begin(), s.end());
        return s;
    };
    const auto sa = sizes(a);
    if (sa != sizes(b) || std::adjacent_find(sa.begin(), sa.end()) != sa.end()) {
        throw std::invalid_argument("speedup_table: row sets must cover the same distinct sizes");
    }
    std::vector<SpeedupEntry> out;
    for (const auto& ra : a) {
        const auto rb = std::find_if(b.begin(), b.end(), [&](const SummaryRow& r) { return r.n == ra.n; });
        out.push_back({ra.n, ra.mean_evals / rb->mean_evals});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.n < y.n; });
    return out;
}

} // namespace moea_lab

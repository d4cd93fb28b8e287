#pragma once

#include "experiment.hpp"

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moea_lab {

// Sweep files are plain "key = value" lines; '#' starts a comment.
//
//   sizes    = 10..140:10        # or a comma list: 32,64,128
//   runs     = 10
//   seed     = 2022
//   budget   = 1000000000
//   log-base = e                 # base for "<coef>log" values
//   threads  = 0
//   out      = results.csv
//   arm      = gsemo algorithm=gsemo
//   arm      = opll  algorithm=opll-gsemo controller=static lambda=7log
//
// Arm options: algorithm, benchmark, controller, lambda, k, c, update-strength.

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> words(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        const auto start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

} // namespace detail

/// "a..b:step" (inclusive) or a comma-separated list.
inline std::vector<std::size_t> parse_sizes(std::string_view s)
{
    std::vector<std::size_t> out;
    if (const auto dots = s.find(".."); dots != std::string_view::npos) {
        const auto colon = s.find(':', dots);
        const auto first = detail::parse_u64(detail::trim(s.substr(0, dots)));
        const auto last = detail::parse_u64(
            detail::trim(s.substr(dots + 2, colon == std::string_view::npos ? s.npos : colon - dots - 2)));
        const auto step = colon == std::string_view::npos ? 1 : detail::parse_u64(detail::trim(s.substr(colon + 1)));
        if (step == 0 || last < first) {
            throw std::invalid_argument("invalid size range '" + std::string(s) + "'");
        }
        for (auto v = first; v <= last; v += step) {
            out.push_back(static_cast<std::size_t>(v));
        }
        return out;
    }
    for (auto part : detail::split(s, ',')) {
        out.push_back(static_cast<std::size_t>(detail::parse_u64(detail::trim(part))));
    }
    return out;
}

inline Arm parse_arm(std::string_view text)
{
    const auto w = detail::words(text);
    if (w.empty()) {
        throw std::invalid_argument("arm needs a name");
    }
    Arm arm;
    arm.name = std::string(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
        const auto eq = w[i].find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("arm option '" + std::string(w[i]) + "' is not key=value");
        }
        const auto key = w[i].substr(0, eq);
        const auto value = w[i].substr(eq + 1);
        if (key == "algorithm") {
            arm.algorithm = parse_algorithm(value);
        } else if (key == "benchmark") {
            arm.benchmark = std::string(value);
        } else if (key == "controller") {
            arm.controller = parse_controller_mode(value);
        } else if (key == "lambda") {
            arm.lambda = parse_scaled_value(value);
        } else if (key == "k") {
            arm.k = parse_scaled_value(value);
        } else if (key == "c") {
            arm.c = detail::parse_double(value);
        } else if (key == "update-strength") {
            arm.update_strength = detail::parse_double(value);
        } else {
            throw std::invalid_argument("unknown arm option '" + std::string(key) + "'");
        }
    }
    return arm;
}

inline ExperimentSpec parse_experiment_spec(std::string_view text)
{
    ExperimentSpec spec;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        try {
            if (key == "sizes") {
                spec.sizes = parse_sizes(value);
            } else if (key == "runs") {
                spec.runs = static_cast<std::size_t>(detail::parse_u64(value));
            } else if (key == "seed") {
                spec.base_seed = detail::parse_u64(value);
            } else if (key == "budget") {
                spec.budget = detail::parse_u64(value);
            } else if (key == "log-base") {
                spec.log_base = parse_log_base(value);
            } else if (key == "threads") {
                spec.threads = static_cast<std::size_t>(detail::parse_u64(value));
            } else if (key == "out") {
                spec.out = std::string(value);
            } else if (key == "arm") {
                spec.arms.push_back(parse_arm(value));
            } else {
                throw std::invalid_argument("unknown key '" + std::string(key) + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    validate(spec);
    return spec;
}

inline ExperimentSpec load_experiment_spec(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open spec file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_experiment_spec(ss.str());
}

} // namespace moea_lab

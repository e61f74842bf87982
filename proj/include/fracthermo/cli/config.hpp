#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fracthermo/green.hpp"
#include "fracthermo/quad.hpp"
#include "fracthermo/source.hpp"

namespace fracthermo::cli {

/// Malformed configuration: unknown key, bad value, missing required key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class HypothesisMode { off, warn, strict };

inline std::string to_string(HypothesisMode m) {
    switch (m) {
    case HypothesisMode::off: return "off";
    case HypothesisMode::warn: return "warn";
    case HypothesisMode::strict: return "strict";
    }
    return {};
}

/// Settings of one `solve` run. Read from a flat `key = value` file and/or
/// command-line flags with the same names; underscores in keys are accepted
/// as hyphens.
struct RunConfig {
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> eta;
    std::optional<double> lambda;
    std::optional<std::string> f_spec;
    std::size_t grid_n = 256;
    double tol = 1e-10;
    std::size_t max_iter = 200;
    double R = 20.0;
    std::uint64_t seed = 42;
    QuadSpec quad{};
    std::string out = "solution.csv";
    std::string report = "report.json";
    HypothesisMode check_hypotheses = HypothesisMode::warn;
    bool verify_residual = false;

    /// Canonical key order used by serialize().
    static constexpr std::array<std::string_view, 16> keys = {
        "alpha", "beta", "eta", "lambda", "f", "grid-n", "tol", "max-iter",
        "R", "seed", "panels-per-segment", "grading-levels", "out", "report",
        "check-hypotheses", "verify-residual"};

    void set(std::string_view key, std::string_view value);

    ModelParams params() const {
        return ModelParams(require(alpha, "alpha"), require(beta, "beta"), require(eta, "eta"),
                           require(lambda, "lambda"));
    }

    SourceFunction source() const {
        if (!f_spec) {
            throw ConfigError("missing required key 'f'");
        }
        return SourceFunction::parse(*f_spec);
    }

    /// `key = value` lines in canonical order; unset optional keys are left out.
    std::string serialize() const;

private:
    static double require(const std::optional<double>& v, const char* key) {
        if (!v) {
            throw ConfigError(std::string("missing required key '") + key + "'");
        }
        return *v;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

inline std::string normalize_key(std::string_view key) {
    std::string k(trim(key));
    std::replace(k.begin(), k.end(), '_', '-');
    if (k == "f-spec") {
        k = "f";
    }
    return k;
}

inline std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double to_real(std::string_view key, std::string_view text) {
    text = trim(text);
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ConfigError("key '" + std::string(key) + "': expected a number, got '" +
                          std::string(text) + "'");
    }
    return v;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("key '" + std::string(key) + "': expected a non-negative integer, got '" +
                          std::string(text) + "'");
    }
    return v;
}

inline bool to_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("key '" + std::string(key) + "': expected true or false, got '" +
                      std::string(text) + "'");
}

}  // namespace detail

inline void RunConfig::set(std::string_view raw_key, std::string_view value) {
    const std::string key = detail::normalize_key(raw_key);
    value = detail::trim(value);
    if (key == "alpha") alpha = detail::to_real(key, value);
    else if (key == "beta") beta = detail::to_real(key, value);
    else if (key == "eta") eta = detail::to_real(key, value);
    else if (key == "lambda") lambda = detail::to_real(key, value);
    else if (key == "f") {
        try {
            f_spec = SourceFunction::parse(value).to_string();
        } catch (const DomainError& e) {
            throw ConfigError("key 'f': " + std::string(e.what()));
        }
    }
    else if (key == "grid-n") {
        grid_n = detail::to_integer<std::size_t>(key, value);
        if (grid_n < 4) throw ConfigError("key 'grid-n': need at least 4 intervals");
    }
    else if (key == "tol") {
        tol = detail::to_real(key, value);
        if (!(tol > 0.0)) throw ConfigError("key 'tol': must be positive");
    }
    else if (key == "max-iter") {
        max_iter = detail::to_integer<std::size_t>(key, value);
        if (max_iter == 0) throw ConfigError("key 'max-iter': must be positive");
    }
    else if (key == "R") {
        R = detail::to_real(key, value);
        if (!(R > 0.0)) throw ConfigError("key 'R': must be positive");
    }
    else if (key == "seed") seed = detail::to_integer<std::uint64_t>(key, value);
    else if (key == "panels-per-segment") {
        quad.panels_per_segment = detail::to_integer<int>(key, value);
        if (quad.panels_per_segment < 1) throw ConfigError("key 'panels-per-segment': must be >= 1");
    }
    else if (key == "grading-levels") quad.grading_levels = detail::to_integer<int>(key, value);
    else if (key == "out") out = std::string(value);
    else if (key == "report") report = std::string(value);
    else if (key == "check-hypotheses") {
        if (value == "off") check_hypotheses = HypothesisMode::off;
        else if (value == "warn") check_hypotheses = HypothesisMode::warn;
        else if (value == "strict") check_hypotheses = HypothesisMode::strict;
        else throw ConfigError("key 'check-hypotheses': expected off, warn or strict, got '" +
                               std::string(value) + "'");
    }
    else if (key == "verify-residual") verify_residual = detail::to_bool(key, value);
    else throw ConfigError("unknown key '" + std::string(detail::trim(raw_key)) + "'");
}

inline std::string RunConfig::serialize() const {
    std::ostringstream os;
    const auto line = [&](std::string_view k, const std::string& v) { os << k << " = " << v << '\n'; };
    if (alpha) line("alpha", detail::format_real(*alpha));
    if (beta) line("beta", detail::format_real(*beta));
    if (eta) line("eta", detail::format_real(*eta));
    if (lambda) line("lambda", detail::format_real(*lambda));
    if (f_spec) line("f", *f_spec);
    line("grid-n", std::to_string(grid_n));
    line("tol", detail::format_real(tol));
    line("max-iter", std::to_string(max_iter));
    line("R", detail::format_real(R));
    line("seed", std::to_string(seed));
    line("panels-per-segment", std::to_string(quad.panels_per_segment));
    line("grading-levels", std::to_string(quad.grading_levels));
    line("out", out);
    line("report", report);
    line("check-hypotheses", to_string(check_hypotheses));
    line("verify-residual", verify_residual ? "true" : "false");
    return os.str();
}

/// Parses configuration text. Errors name the offending line.
inline RunConfig parse_config(std::string_view text, RunConfig base = {}) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                              std::string(line) + "'");
        }
        try {
            base.set(line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str(), std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace fracthermo::cli

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fracthermo/errors.hpp"

namespace fracthermo {

/// Nonlinearity f(t, u) of the thermostat problem, drawn from a fixed catalog:
///
///   constant:c        f = c,              c >= 0
///   affine:a,b        f = a + b u,        a, b >= 0
///   log_pole          f = ln(3^20 + t^2) + t^3 + 1/(24 - u),   u < 24
///
/// Every member is continuous, nonnegative on its domain and non-decreasing in u.
class SourceFunction {
public:
    enum class Kind { constant, affine, log_pole };

    /// Values at or above this are rejected by log_pole, not clamped.
    static constexpr double pole = 24.0;
    static constexpr double pole_guard = 1e-6;

    static SourceFunction constant(double c) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw DomainError("SourceFunction: constant must be finite and >= 0");
        }
        return SourceFunction(Kind::constant, c, 0.0);
    }

    static SourceFunction affine(double a, double b) {
        if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
            throw DomainError("SourceFunction: affine needs finite a >= 0 and b >= 0");
        }
        return SourceFunction(Kind::affine, a, b);
    }

    static SourceFunction log_pole() { return SourceFunction(Kind::log_pole, 0.0, 0.0); }

    /// Parses `constant:<c>`, `affine:<a>,<b>` or `log_pole`.
    static SourceFunction parse(std::string_view spec);

    Kind kind() const noexcept { return kind_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    /// True when f does not depend on u.
    bool ignores_u() const noexcept {
        return kind_ == Kind::constant || (kind_ == Kind::affine && b_ == 0.0);
    }

    bool in_domain(double u) const noexcept {
        if (!std::isfinite(u)) {
            return false;
        }
        return kind_ != Kind::log_pole || u < pole - pole_guard;
    }

    double operator()(double t, double u) const {
        if (!in_domain(u)) {
            std::ostringstream os;
            os.precision(17);
            os << "source " << to_string() << " evaluated outside its domain at t=" << t
               << ", u=" << u;
            throw EvaluationError(os.str(), t);
        }
        switch (kind_) {
        case Kind::constant:
            return a_;
        case Kind::affine:
            return a_ + b_ * u;
        case Kind::log_pole:
            return std::log(3486784401.0 + t * t) + t * t * t + 1.0 / (pole - u);
        }
        return 0.0;
    }

    /// Canonical catalog string; parse(to_string()) reproduces *this.
    std::string to_string() const {
        switch (kind_) {
        case Kind::constant:
            return "constant:" + format(a_);
        case Kind::affine:
            return "affine:" + format(a_) + "," + format(b_);
        case Kind::log_pole:
            return "log_pole";
        }
        return {};
    }

private:
    SourceFunction(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    static std::string format(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    Kind kind_;
    double a_;
    double b_;
};

namespace detail {

inline double parse_real(std::string_view text, std::string_view what) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw DomainError("expected a number for " + std::string(what) + ", got '" +
                          std::string(text) + "'");
    }
    return value;
}

}  // namespace detail

inline SourceFunction SourceFunction::parse(std::string_view spec) {
    if (spec == "log_pole") {
        return log_pole();
    }
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw DomainError("unknown source function '" + std::string(spec) +
                          "' (expected constant:<c>, affine:<a>,<b> or log_pole)");
    }
    const std::string_view head = spec.substr(0, colon);
    const std::string_view args = spec.substr(colon + 1);
    if (head == "constant") {
        return constant(detail::parse_real(args, "constant:<c>"));
    }
    if (head == "affine") {
        const auto comma = args.find(',');
        if (comma == std::string_view::npos) {
            throw DomainError("affine source needs two coefficients: affine:<a>,<b>");
        }
        return affine(detail::parse_real(args.substr(0, comma), "affine a"),
                      detail::parse_real(args.substr(comma + 1), "affine b"));
    }
    throw DomainError("unknown source function kind '" + std::string(head) + "'");
}

/// Control function of a generalized contraction: continuous, non-decreasing,
/// zero exactly at zero.
class AlteringDistance {
public:
    enum class Kind { power, clamped_power, identity };

    /// t -> c t^q with c > 0, q >= 1.
    static AlteringDistance power(double c, double q) {
        if (!(c > 0.0) || !(q >= 1.0) || !std::isfinite(c) || !std::isfinite(q)) {
            throw DomainError("AlteringDistance: power needs c > 0 and q >= 1");
        }
        return AlteringDistance(Kind::power, c, q);
    }

    /// t -> min(t^2, 1).
    static AlteringDistance clamped_power() { return AlteringDistance(Kind::clamped_power, 1.0, 2.0); }

    static AlteringDistance identity() { return AlteringDistance(Kind::identity, 1.0, 1.0); }

    Kind kind() const noexcept { return kind_; }

    double operator()(double t) const {
        if (!(t >= 0.0)) {
            throw DomainError("AlteringDistance: argument must be >= 0");
        }
        switch (kind_) {
        case Kind::power:
            return scale_ * std::pow(t, exponent_);
        case Kind::clamped_power:
            return t < 1.0 ? t * t : 1.0;
        case Kind::identity:
            return t;
        }
        return 0.0;
    }

    /// Checks the defining properties on `points` samples of [0, upper]:
    /// value 0 at 0, positive elsewhere, non-decreasing.
    bool satisfies_definition(double upper = 50.0, int points = 1000) const {
        if ((*this)(0.0) != 0.0) {
            return false;
        }
        double prev = 0.0;
        for (int i = 1; i <= points; ++i) {
            const double t = upper * static_cast<double>(i) / points;
            const double v = (*this)(t);
            if (!(v > 0.0) || v < prev || !std::isfinite(v)) {
                return false;
            }
            prev = v;
        }
        return true;
    }

    std::string to_string() const {
        switch (kind_) {
        case Kind::power: {
            std::ostringstream os;
            os.precision(17);
            os << "power:" << scale_ << "," << exponent_;
            return os.str();
        }
        case Kind::clamped_power:
            return "clamped_power";
        case Kind::identity:
            return "identity";
        }
        return {};
    }

private:
    AlteringDistance(Kind kind, double scale, double exponent)
        : kind_(kind), scale_(scale), exponent_(exponent) {}

    Kind kind_;
    double scale_;
    double exponent_;
};

}  // namespace fracthermo

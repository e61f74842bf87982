#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <sstream>
#include <vector>

#include "fracthermo/errors.hpp"
#include "fracthermo/green.hpp"

namespace fracthermo {

/// Composite Gauss-Legendre layout for integrals of s -> G(t, s) w(s).
///
/// [0, 1] is cut at t and eta. Each resulting segment gets
/// `panels_per_segment` uniform panels, and a panel whose right end is a
/// singular point of G (s -> t or s -> eta from the left) is further split
/// geometrically `grading_levels` times with ratio 1/2.
struct QuadSpec {
    static constexpr int gl_nodes = 4;

    int panels_per_segment = 8;
    int grading_levels = 16;

    void validate() const {
        if (panels_per_segment < 1) {
            throw DomainError("QuadSpec: panels_per_segment must be >= 1");
        }
        if (grading_levels < 0) {
            throw DomainError("QuadSpec: grading_levels must be >= 0");
        }
    }
};

/// Nodes and weights of a quadrature rule on [0, 1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

inline constexpr std::array<double, 4> gl4_x = {
    -0.86113631159405257522, -0.33998104358485626480,
    0.33998104358485626480, 0.86113631159405257522};
inline constexpr std::array<double, 4> gl4_w = {
    0.34785484513745385737, 0.65214515486254614263,
    0.65214515486254614263, 0.34785484513745385737};

inline void append_panel(QuadRule& rule, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < gl4_x.size(); ++k) {
        rule.nodes.push_back(mid + half * gl4_x[k]);
        rule.weights.push_back(half * gl4_w[k]);
    }
}

inline void append_graded(QuadRule& rule, double lo, double hi, int levels) {
    // [lo, hi - w/2], [hi - w/2, hi - w/4], ..., innermost [hi - w/2^L, hi]
    const double width = hi - lo;
    double left = lo;
    for (int level = 1; level <= levels; ++level) {
        const double right = hi - std::ldexp(width, -level);
        append_panel(rule, left, right);
        left = right;
    }
    append_panel(rule, left, hi);
}

}  // namespace detail

/// Quadrature rule adapted to the seams of G(t, .) for fixed t.
inline QuadRule kernel_rule(const ModelParams& p, double t, const QuadSpec& q = {}) {
    q.validate();
    detail::check_unit(t, "t");

    std::vector<double> cuts = {0.0, 1.0};
    for (double c : {t, p.eta()}) {
        if (c > 0.0 && c < 1.0) {
            cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadRule rule;
    const std::size_t per_segment =
        static_cast<std::size_t>(q.panels_per_segment + q.grading_levels) * QuadSpec::gl_nodes;
    rule.nodes.reserve(per_segment * (cuts.size() - 1));
    rule.weights.reserve(per_segment * (cuts.size() - 1));

    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const double lo = cuts[seg];
        const double hi = cuts[seg + 1];
        const bool singular_right = (hi == t) || (hi == p.eta());
        const double h = (hi - lo) / q.panels_per_segment;
        for (int i = 0; i < q.panels_per_segment; ++i) {
            const double a = lo + i * h;
            const double b = (i + 1 == q.panels_per_segment) ? hi : lo + (i + 1) * h;
            if (singular_right && i + 1 == q.panels_per_segment) {
                detail::append_graded(rule, a, b, q.grading_levels);
            } else {
                detail::append_panel(rule, a, b);
            }
        }
    }
    return rule;
}

/// Plain composite 4-point Gauss-Legendre on [0, 1] with
/// `panels_per_segment` uniform panels (no kernel, no seams).
inline QuadRule uniform_rule(const QuadSpec& q = {}) {
    q.validate();
    QuadRule rule;
    const double h = 1.0 / q.panels_per_segment;
    for (int i = 0; i < q.panels_per_segment; ++i) {
        const double b = (i + 1 == q.panels_per_segment) ? 1.0 : (i + 1) * h;
        detail::append_panel(rule, i * h, b);
    }
    return rule;
}

namespace detail {

template <typename F>
double sample_finite(F&& w, double s) {
    const double v = w(s);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os.precision(17);
        os << "integrand is not finite at s=" << s << " (value " << v << ")";
        throw EvaluationError(os.str(), s);
    }
    return v;
}

}  // namespace detail

/// Integral over s in [0, 1] of G(t, s) w(s).
///
/// w is only sampled at interior Gauss nodes, never at the seams. Sums are
/// accumulated in node order, so results are bit-reproducible.
template <typename F>
    requires std::invocable<F&, double>
double integrate_kernel(const ModelParams& p, double t, F&& w, const QuadSpec& q = {}) {
    const QuadRule rule = kernel_rule(p, t, q);
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const double s = rule.nodes[j];
        sum += rule.weights[j] * kernel(p, t, s) * detail::sample_finite(w, s);
    }
    return sum;
}

/// Integral of w over [0, 1] on the uniform rule.
template <typename F>
    requires std::invocable<F&, double>
double integrate(F&& w, const QuadSpec& q = {}) {
    const QuadRule rule = uniform_rule(q);
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
        sum += rule.weights[j] * detail::sample_finite(w, rule.nodes[j]);
    }
    return sum;
}

}  // namespace fracthermo

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "fracthermo/errors.hpp"
#include "fracthermo/green.hpp"
#include "fracthermo/grid_function.hpp"
#include "fracthermo/quad.hpp"
#include "fracthermo/source.hpp"

namespace fracthermo {

/// Nystrom discretization of the Hammerstein operator
///
///   (T u)(t) = lambda * integral_0^1 G(t, s) f(s, u(s)) ds
///
/// on an n-interval uniform grid. The seam-adapted quadrature rule of every
/// grid point is built once; each application then costs one source
/// evaluation per quadrature node, with u read through its piecewise-linear
/// interpolant.
class HammersteinOperator {
public:
    HammersteinOperator(const ModelParams& p, std::size_t n, const QuadSpec& q = {})
        : params_(p), n_(n), rows_(n + 1) {
        if (n < 2) {
            throw DomainError("HammersteinOperator: need n >= 2");
        }
        for (std::size_t i = 0; i <= n; ++i) {
            const double t = GridFunction::node(n, i);
            const QuadRule rule = kernel_rule(p, t, q);
            Row& row = rows_[i];
            row.nodes = rule.nodes;
            row.weights.resize(rule.size());
            row.cell.resize(rule.size());
            row.frac.resize(rule.size());
            for (std::size_t j = 0; j < rule.size(); ++j) {
                const double s = rule.nodes[j];
                row.weights[j] = rule.weights[j] * kernel(p, t, s);
                const double pos = s * static_cast<double>(n);
                std::size_t c = std::min(static_cast<std::size_t>(pos), n - 1);
                row.cell[j] = c;
                row.frac[j] = pos - static_cast<double>(c);
            }
        }
    }

    const ModelParams& params() const noexcept { return params_; }
    std::size_t intervals() const noexcept { return n_; }

    GridFunction apply(const SourceFunction& f, const GridFunction& u) const {
        if (u.intervals() != n_) {
            throw DomainError("HammersteinOperator: grid mismatch (operator n=" +
                              std::to_string(n_) + ", u n=" + std::to_string(u.intervals()) + ")");
        }
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (!f.in_domain(u[i])) {
                std::ostringstream os;
                os.precision(17);
                os << "u leaves the domain of " << f.to_string() << " at grid point i=" << i
                   << " (t=" << u.t(i) << ", u=" << u[i] << ")";
                throw EvaluationError(os.str(), u.t(i));
            }
        }

        const auto values = u.values();
        std::vector<double> out(n_ + 1);
        for (std::size_t i = 0; i <= n_; ++i) {
            const Row& row = rows_[i];
            double sum = 0.0;
            for (std::size_t j = 0; j < row.nodes.size(); ++j) {
                const std::size_t c = row.cell[j];
                const double ubar = values[c] + row.frac[j] * (values[c + 1] - values[c]);
                sum += row.weights[j] * f(row.nodes[j], ubar);
            }
            out[i] = params_.lambda() * sum;
            if (!std::isfinite(out[i])) {
                throw EvaluationError("T u is not finite at grid point i=" + std::to_string(i),
                                      u.t(i));
            }
        }
        return GridFunction(n_, std::move(out));
    }

private:
    struct Row {
        std::vector<double> nodes;
        std::vector<double> weights;  // Gauss weight times G(t_i, s_j)
        std::vector<std::size_t> cell;
        std::vector<double> frac;
    };

    ModelParams params_;
    std::size_t n_;
    std::vector<Row> rows_;
};

/// One application of T on the grid of u.
inline GridFunction apply_T(const ModelParams& p, const SourceFunction& f, const GridFunction& u,
                            const QuadSpec& q = {}) {
    return HammersteinOperator(p, u.intervals(), q).apply(f, u);
}

struct SolveResult {
    GridFunction solution;
    std::size_t iterations = 0;
    double final_step = std::numeric_limits<double>::infinity();
    double fixed_point_residual = std::numeric_limits<double>::infinity();
    std::vector<double> step_history{};
    bool converged = false;
    /// Smallest node value over all iterates u_1, u_2, ... (u_0 excluded).
    double min_iterate_value = std::numeric_limits<double>::infinity();
};

struct SolveOptions {
    double tol = 1e-10;
    std::size_t max_iter = 200;
};

/// Picard iteration u_{k+1} = T u_k from u0 until the sup-norm increment
/// drops to `tol` or `max_iter` applications have been made.
///
/// A run that exhausts max_iter returns converged = false with the full step
/// history. Source-domain breaches propagate as EvaluationError.
inline SolveResult picard_solve(const ModelParams& p, const SourceFunction& f,
                                const GridFunction& u0, const SolveOptions& opts = {},
                                const QuadSpec& q = {}) {
    if (!(opts.tol > 0.0)) {
        throw DomainError("picard_solve: tol must be positive");
    }
    if (opts.max_iter == 0) {
        throw DomainError("picard_solve: max_iter must be positive");
    }
    const HammersteinOperator op(p, u0.intervals(), q);

    SolveResult result{u0};
    for (std::size_t k = 0; k < opts.max_iter; ++k) {
        GridFunction next = op.apply(f, result.solution);
        const double step = sup_norm_distance(next, result.solution);
        result.step_history.push_back(step);
        result.min_iterate_value = std::min(result.min_iterate_value, next.min());
        result.solution = std::move(next);
        result.iterations = k + 1;
        result.final_step = step;
        if (step <= opts.tol) {
            result.converged = true;
            break;
        }
    }
    result.fixed_point_residual = sup_norm_distance(result.solution, op.apply(f, result.solution));
    return result;
}

struct ContractionOptions {
    std::size_t sample_count = 1000;
    std::uint64_t seed = 42;
    AlteringDistance psi = AlteringDistance::clamped_power();
    double bound_R = 20.0;
    /// Draw node values from [0, R] instead of [-R, R].
    bool nonnegative = false;
    std::size_t grid_n = 64;
    /// Also test the pointwise source inequality behind the contraction.
    bool check_source_inequality = true;
};

/// Outcome of sampling the generalized contraction inequality
///
///   ||Tu - Tv|| <= ||Tu - v|| - k psi(||u - v||)
///
/// (phi = identity) over random pairs, together with the pointwise source
/// condition
///
///   lambda |f(s,u) - f(s,v)| <= lambda |f(s,u)| - lambda sup|w| - psi(sup|u - v|)
///
/// read with w = v (as the solvability theorem states it) and with w = u.
struct ContractionReport {
    std::size_t samples = 0;
    std::size_t applicable = 0;
    std::size_t inapplicable = 0;
    std::size_t violations = 0;
    /// min over applicable pairs of RHS - LHS; negative means a violation.
    double worst_margin = std::numeric_limits<double>::infinity();
    double k = 0.0;
    std::size_t source_violations_v = 0;
    std::size_t source_violations_u = 0;
    double worst_source_margin_v = std::numeric_limits<double>::infinity();
    double worst_source_margin_u = std::numeric_limits<double>::infinity();
};

inline constexpr double contraction_slack = 1e-9;

/// RHS - LHS of ||Tu - Tv|| <= ||Tu - v|| - k psi(||u - v||) for one pair.
inline double contraction_margin(const HammersteinOperator& op, const SourceFunction& f,
                                 const GridFunction& u, const GridFunction& v,
                                 const AlteringDistance& psi) {
    const GridFunction tu = op.apply(f, u);
    const GridFunction tv = op.apply(f, v);
    const double k = bound_k(op.params());
    return sup_norm_distance(tu, v) - k * psi(sup_norm_distance(u, v)) - sup_norm_distance(tu, tv);
}

namespace detail {

inline GridFunction random_grid(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n + 1);
    for (double& x : v) {
        x = dist(rng);
    }
    return GridFunction(n, std::move(v));
}

}  // namespace detail

/// Samples pairs (u, v) with node values uniform in [-R, R] (or [0, R]) and
/// counts violations of the contraction inequality. Pairs outside the
/// source's domain are counted as inapplicable.
inline ContractionReport check_contraction(const ModelParams& p, const SourceFunction& f,
                                           const ContractionOptions& opts,
                                           const QuadSpec& q = {}) {
    if (opts.sample_count == 0) {
        throw DomainError("check_contraction: sample_count must be >= 1");
    }
    if (!(opts.bound_R > 0.0)) {
        throw DomainError("check_contraction: bound_R must be positive");
    }
    const HammersteinOperator op(p, opts.grid_n, q);
    std::mt19937_64 rng(opts.seed);
    const double lo = opts.nonnegative ? 0.0 : -opts.bound_R;

    ContractionReport report;
    report.k = bound_k(p);
    const double lambda = p.lambda();

    for (std::size_t m = 0; m < opts.sample_count; ++m) {
        const GridFunction u = detail::random_grid(rng, opts.grid_n, lo, opts.bound_R);
        const GridFunction v = detail::random_grid(rng, opts.grid_n, lo, opts.bound_R);
        ++report.samples;

        double margin = 0.0;
        try {
            margin = contraction_margin(op, f, u, v, opts.psi);
        } catch (const EvaluationError&) {
            ++report.inapplicable;
            continue;
        }
        ++report.applicable;
        report.worst_margin = std::min(report.worst_margin, margin);
        if (margin < -contraction_slack) {
            ++report.violations;
        }

        if (opts.check_source_inequality) {
            const double psi_term = opts.psi(sup_norm_distance(u, v));
            double margin_v = std::numeric_limits<double>::infinity();
            double margin_u = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double s = u.t(i);
                const double fu = f(s, u[i]);
                const double fv = f(s, v[i]);
                const double left = lambda * std::abs(fu - fv);
                const double base = lambda * std::abs(fu) - psi_term;
                margin_v = std::min(margin_v, base - lambda * v.sup_norm() - left);
                margin_u = std::min(margin_u, base - lambda * u.sup_norm() - left);
            }
            report.worst_source_margin_v = std::min(report.worst_source_margin_v, margin_v);
            report.worst_source_margin_u = std::min(report.worst_source_margin_u, margin_u);
            if (margin_v < -contraction_slack) {
                ++report.source_violations_v;
            }
            if (margin_u < -contraction_slack) {
                ++report.source_violations_u;
            }
        }
    }
    return report;
}

}  // namespace fracthermo

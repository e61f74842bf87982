#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "fracthermo/errors.hpp"
#include "fracthermo/green.hpp"
#include "fracthermo/quad.hpp"
#include "fracthermo/solver.hpp"
#include "fracthermo/source.hpp"

namespace fracthermo {

/// Evidence for each sufficient condition of the existence and uniqueness
/// theorems. Every verdict sits next to the numbers that produced it.
struct HypothesisReport {
    // beta Gamma(alpha) - (1-eta)^(alpha-1) > 0
    bool wellposed = false;
    double wellposed_value = 0.0;

    // (i) beta Gamma(alpha+1) + eta^alpha > 1
    bool cond_i = false;
    double cond_i_value = 0.0;

    // (ii) sampled pointwise source inequality on C = {0 <= u <= R}
    bool cond_ii = false;
    std::size_t cond_ii_samples = 0;
    std::size_t cond_ii_inapplicable = 0;
    std::size_t cond_ii_violations = 0;      // sup|v| reading
    std::size_t cond_ii_violations_u = 0;    // sup|u| reading
    double cond_ii_worst_margin = 0.0;
    std::size_t contraction_violations = 0;  // operator-level inequality, same pairs
    double contraction_worst_margin = 0.0;

    // (iii) integral_0^1 f(s, R) ds <= R / (lambda k1)
    bool cond_iii = false;
    bool cond_iii_applicable = false;
    double cond_iii_integral = std::numeric_limits<double>::quiet_NaN();
    double cond_iii_bound = 0.0;

    bool monotone_f = false;
    std::size_t monotone_checked = 0;
    std::size_t monotone_violations = 0;

    bool f_positive_somewhere = false;
    double f_positive_at = std::numeric_limits<double>::quiet_NaN();

    double k = 0.0;
    double k1 = 0.0;
    double lambda_threshold = 0.0;  // 1/k, +inf when k <= 0
    bool lambda_ok = false;

    double R = 0.0;
    std::uint64_t seed = 0;

    bool all_pass() const noexcept {
        return wellposed && cond_i && cond_ii && cond_iii && monotone_f && f_positive_somewhere &&
               lambda_ok;
    }
};

struct HypothesisOptions {
    std::size_t pair_samples = 200;
    std::size_t monotone_samples = 1000;
    std::size_t positivity_points = 1000;
    std::size_t grid_n = 64;
    AlteringDistance psi = AlteringDistance::clamped_power();
};

inline constexpr double threshold_slack = 1e-12;

/// Checks every sufficient condition for (p, f) on the set C of radius R.
inline HypothesisReport check_all(const ModelParams& p, const SourceFunction& f, double R,
                                  std::uint64_t seed, const QuadSpec& q = {},
                                  const HypothesisOptions& opts = {}) {
    if (!(R > 0.0) || !std::isfinite(R)) {
        throw DomainError("check_all: R must be positive");
    }
    HypothesisReport rep;
    rep.R = R;
    rep.seed = seed;

    rep.wellposed_value = p.wellposedness();
    rep.wellposed = rep.wellposed_value > 0.0;

    rep.cond_i_value = condition_i_value(p);
    rep.cond_i = rep.cond_i_value > 1.0;

    rep.k = bound_k(p);
    rep.k1 = bound_k1(p);
    rep.lambda_threshold = rep.k > 0.0 ? 1.0 / rep.k : std::numeric_limits<double>::infinity();
    rep.lambda_ok = p.lambda() >= rep.lambda_threshold - threshold_slack;

    ContractionOptions copts;
    copts.sample_count = opts.pair_samples;
    copts.seed = seed;
    copts.psi = opts.psi;
    copts.bound_R = R;
    copts.nonnegative = true;
    copts.grid_n = opts.grid_n;
    copts.check_source_inequality = true;
    const ContractionReport cr = check_contraction(p, f, copts, q);
    rep.cond_ii_samples = cr.applicable;
    rep.cond_ii_inapplicable = cr.inapplicable;
    rep.cond_ii_violations = cr.source_violations_v;
    rep.cond_ii_violations_u = cr.source_violations_u;
    rep.cond_ii_worst_margin = cr.worst_source_margin_v;
    rep.contraction_violations = cr.violations;
    rep.contraction_worst_margin = cr.worst_margin;
    rep.cond_ii = cr.applicable > 0 && cr.source_violations_v == 0;

    rep.cond_iii_bound = R / (p.lambda() * rep.k1);
    if (f.in_domain(R)) {
        rep.cond_iii_applicable = true;
        rep.cond_iii_integral = integrate([&](double s) { return f(s, R); }, q);
        rep.cond_iii = rep.cond_iii_integral <= rep.cond_iii_bound;
    }

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> level(0.0, R);
    for (std::size_t m = 0; m < opts.monotone_samples; ++m) {
        const double s = unit(rng);
        double u1 = level(rng);
        double u2 = level(rng);
        if (u1 > u2) {
            std::swap(u1, u2);
        }
        if (!f.in_domain(u1) || !f.in_domain(u2)) {
            continue;
        }
        ++rep.monotone_checked;
        if (f(s, u1) > f(s, u2) + 1e-12) {
            ++rep.monotone_violations;
        }
    }
    rep.monotone_f = rep.monotone_checked > 0 && rep.monotone_violations == 0;

    for (std::size_t i = 0; i < opts.positivity_points; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(opts.positivity_points);
        if (f(t, 0.0) > 0.0) {
            rep.f_positive_somewhere = true;
            rep.f_positive_at = t;
            break;
        }
    }
    return rep;
}

}  // namespace fracthermo

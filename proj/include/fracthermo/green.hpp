#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "fracthermo/errors.hpp"
#include "fracthermo/specfun.hpp"

namespace fracthermo {

/// Parameters (alpha, beta, eta, lambda) of the thermostat problem
///
///   D^alpha u(t) + lambda f(t, u(t)) = 0,   t in [0, 1]
///   u'(0) = 0,   beta D^(alpha-1) u(1) + u(eta) = 0
///
/// where D is the Caputo derivative. Construction enforces 1 < alpha <= 2,
/// beta > 0, 0 <= eta <= 1, lambda > 0 and the wellposedness condition
/// beta Gamma(alpha) - (1 - eta)^(alpha-1) > 0. Immutable afterwards.
class ModelParams {
public:
    ModelParams(double alpha, double beta, double eta, double lambda = 1.0)
        : alpha_(alpha), beta_(beta), eta_(eta), lambda_(lambda) {
        if (!(alpha > 1.0 && alpha <= 2.0)) {
            throw DomainError(describe("alpha must lie in (1, 2]"));
        }
        if (!(beta > 0.0) || !std::isfinite(beta)) {
            throw DomainError(describe("beta must be positive"));
        }
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw DomainError(describe("eta must lie in [0, 1]"));
        }
        if (!(lambda > 0.0) || !std::isfinite(lambda)) {
            throw DomainError(describe("lambda must be positive"));
        }
        gamma_alpha_ = fracthermo::gamma(alpha);
        gamma_alpha1_ = fracthermo::gamma(alpha + 1.0);
        if (!(wellposedness() > 0.0)) {
            throw DomainError(describe("beta*Gamma(alpha) - (1-eta)^(alpha-1) must be positive"));
        }
    }

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double eta() const noexcept { return eta_; }
    double lambda() const noexcept { return lambda_; }

    /// Gamma(alpha) and Gamma(alpha + 1), cached at construction.
    double gamma_alpha() const noexcept { return gamma_alpha_; }
    double gamma_alpha_plus_one() const noexcept { return gamma_alpha1_; }

    /// beta Gamma(alpha) - (1 - eta)^(alpha-1). Positive for every constructed object.
    double wellposedness() const {
        return beta_ * gamma_alpha_ - std::pow(1.0 - eta_, alpha_ - 1.0);
    }

    /// Same problem with a different source multiplier.
    ModelParams with_lambda(double lambda) const {
        return ModelParams(alpha_, beta_, eta_, lambda);
    }

private:
    std::string describe(const std::string& msg) const {
        std::ostringstream os;
        os.precision(17);
        os << "ModelParams: " << msg << " (alpha=" << alpha_ << ", beta=" << beta_
           << ", eta=" << eta_ << ", lambda=" << lambda_ << ")";
        return os.str();
    }

    double alpha_;
    double beta_;
    double eta_;
    double lambda_;
    double gamma_alpha_ = 1.0;
    double gamma_alpha1_ = 1.0;
};

namespace detail {

inline constexpr double seam_clamp = 1e-15;

// base^expo for expo > 0, with bases at or below the seam clamp sent to 0 so
// that rounding at s = t or s = eta never yields NaN.
inline double seam_power(double base, double expo) {
    if (base <= seam_clamp) {
        return 0.0;
    }
    return std::exp(expo * std::log(base));
}

inline void check_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string("green: ") + name + " must lie in [0, 1], got " +
                          std::to_string(x));
    }
}

}  // namespace detail

/// Green's function G(t, s) = beta + H_eta(s) - H_t(s), where
/// H_r(s) = (r - s)^(alpha-1) / Gamma(alpha) for s <= r and 0 otherwise.
inline double kernel(const ModelParams& p, double t, double s) {
    detail::check_unit(t, "t");
    detail::check_unit(s, "s");
    const double expo = p.alpha() - 1.0;
    double g = p.beta();
    if (s <= p.eta()) {
        g += detail::seam_power(p.eta() - s, expo) / p.gamma_alpha();
    }
    if (s <= t) {
        g -= detail::seam_power(t - s, expo) / p.gamma_alpha();
    }
    return g;
}

/// Exact value of the integral of G(t, s) over s in [0, 1]:
/// beta + (eta^alpha - t^alpha) / Gamma(alpha + 1). Strictly decreasing in t.
inline double kernel_integral_closed(const ModelParams& p, double t) {
    detail::check_unit(t, "t");
    return p.beta() +
           (std::pow(p.eta(), p.alpha()) - std::pow(t, p.alpha())) / p.gamma_alpha_plus_one();
}

/// k = inf over t of the kernel integral, attained at t = 1. The solvability
/// threshold for lambda is 1/k.
inline double bound_k(const ModelParams& p) { return kernel_integral_closed(p, 1.0); }

/// k1 = beta + eta^(alpha-1) / Gamma(alpha) = G(0, 0), a uniform upper bound of G.
inline double bound_k1(const ModelParams& p) {
    return p.beta() + detail::seam_power(p.eta(), p.alpha() - 1.0) / p.gamma_alpha();
}

/// sup over t of the kernel integral, attained at t = 0.
inline double sup_integral(const ModelParams& p) { return kernel_integral_closed(p, 0.0); }

/// Lower bound beta - (1-eta)^(alpha-1)/Gamma(alpha) of G on the unit square,
/// attained at t = 1, s = eta.
inline double kernel_lower_bound(const ModelParams& p) {
    return p.beta() - std::pow(1.0 - p.eta(), p.alpha() - 1.0) / p.gamma_alpha();
}

/// beta Gamma(alpha + 1) + eta^alpha; exceeds 1 exactly when k > 0.
inline double condition_i_value(const ModelParams& p) {
    return p.beta() * p.gamma_alpha_plus_one() + std::pow(p.eta(), p.alpha());
}

}  // namespace fracthermo

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fracthermo/errors.hpp"
#include "fracthermo/green.hpp"
#include "fracthermo/grid_function.hpp"
#include "fracthermo/source.hpp"
#include "fracthermo/specfun.hpp"

namespace fracthermo {

namespace detail {

inline void require_resolution(const GridFunction& u, const char* who) {
    if (u.intervals() < 4) {
        throw DomainError(std::string(who) + ": need n >= 4 intervals");
    }
}

// (j+1)^sigma - j^sigma for j = 0..count-1
inline std::vector<double> l1_weights(std::size_t count, double sigma) {
    std::vector<double> w(count);
    double prev = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        const double next = std::pow(static_cast<double>(j + 1), sigma);
        w[j] = next - prev;
        prev = next;
    }
    return w;
}

}  // namespace detail

/// L1 approximation of the Caputo derivative of order mu in (0, 1):
///
///   D^mu u(t_m) ~ h^-mu / Gamma(2 - mu) * sum_{j=0}^{m-1} b_j (u_{m-j} - u_{m-j-1}),
///   b_j = (j+1)^(1-mu) - j^(1-mu).
///
/// The value at t_0 is 0. Truncation error is O(h^(2-mu)) for C^2 functions.
inline GridFunction caputo_deriv(const GridFunction& u, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw DomainError("caputo_deriv: order must lie in (0, 1), got " + std::to_string(mu));
    }
    detail::require_resolution(u, "caputo_deriv");
    const std::size_t n = u.intervals();
    const std::vector<double> b = detail::l1_weights(n, 1.0 - mu);
    const double scale = std::pow(u.step(), -mu) / fracthermo::gamma(2.0 - mu);

    std::vector<double> out(n + 1, 0.0);
    for (std::size_t m = 1; m <= n; ++m) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            sum += b[j] * (u[m - j] - u[m - j - 1]);
        }
        out[m] = scale * sum;
    }
    return GridFunction(n, std::move(out));
}

/// Caputo derivative of order alpha in (1, 2].
///
/// u'' is approximated at the nodes by second differences (central inside,
/// second-order one-sided at both ends). For alpha < 2 the piecewise-linear
/// interpolant of those values is integrated exactly against
/// (t - s)^(1-alpha) / Gamma(2 - alpha). Exact on cubics; O(h^2) for smooth
/// u. As alpha -> 2 the weights collapse onto the node itself, so the result
/// tends to the alpha = 2 branch. Value at t_0 is 0 for alpha < 2.
inline GridFunction caputo_deriv2(const GridFunction& u, double alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        throw DomainError("caputo_deriv2: order must lie in (1, 2], got " + std::to_string(alpha));
    }
    detail::require_resolution(u, "caputo_deriv2");
    const std::size_t n = u.intervals();
    const double h = u.step();
    const double inv_h2 = 1.0 / (h * h);

    std::vector<double> d2(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        d2[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2;
    }
    d2[0] = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) * inv_h2;
    d2[n] = (2.0 * u[n] - 5.0 * u[n - 1] + 4.0 * u[n - 2] - u[n - 3]) * inv_h2;
    if (alpha == 2.0) {
        return GridFunction(n, std::move(d2));
    }

    // Product integration of (t_i - s)^(1-alpha) against the piecewise-linear
    // interpolant of u''. Cell weights depend only on the distance a = i - j - 1.
    const double b = 2.0 - alpha;
    const double scale = std::pow(h, b) / fracthermo::gamma(b + 2.0);
    std::vector<double> near_w(n), far_w(n);
    for (std::size_t a = 0; a < n; ++a) {
        const double x = static_cast<double>(a);
        const double xb = std::pow(x, b), x1b = std::pow(x + 1.0, b);
        near_w[a] = (x + 1.0) * x1b - xb * (x + 1.0 + b);
        far_w[a] = x1b * (b - x) + x * xb;
    }
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            const std::size_t a = i - j - 1;
            sum += near_w[a] * d2[j + 1] + far_w[a] * d2[j];
        }
        out[i] = scale * sum;
    }
    return GridFunction(n, std::move(out));
}

struct ResidualReport {
    /// sup over t_i in [0.1, 0.9] of |D^alpha u(t_i) + lambda f(t_i, u_i)|
    double ode_residual_sup = 0.0;
    /// |u'(0)|
    double bc1_residual = 0.0;
    /// |beta D^(alpha-1) u(1) + u(eta)|
    double bc2_residual = 0.0;
    std::size_t grid_n = 0;
};

inline constexpr double residual_window_lo = 0.1;
inline constexpr double residual_window_hi = 0.9;

/// Discrete residuals of the differential equation and both boundary
/// conditions for a grid solution u. Independent of the integral-equation
/// route used to compute u.
inline ResidualReport verify_solution(const ModelParams& p, const SourceFunction& f,
                                      const GridFunction& u) {
    detail::require_resolution(u, "verify_solution");
    const std::size_t n = u.intervals();
    const double h = u.step();

    ResidualReport r;
    r.grid_n = n;

    const GridFunction d_alpha = caputo_deriv2(u, p.alpha());
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = u.t(i);
        if (t < residual_window_lo - 1e-12 || t > residual_window_hi + 1e-12) {
            continue;
        }
        const double res = std::abs(d_alpha[i] + p.lambda() * f(t, u[i]));
        r.ode_residual_sup = std::max(r.ode_residual_sup, res);
    }

    r.bc1_residual = std::abs((-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h));

    double d_end = 0.0;
    if (p.alpha() == 2.0) {
        d_end = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * h);
    } else {
        d_end = caputo_deriv(u, p.alpha() - 1.0)[n];
    }
    r.bc2_residual = std::abs(p.beta() * d_end + u.interpolate(p.eta()));
    return r;
}

}  // namespace fracthermo

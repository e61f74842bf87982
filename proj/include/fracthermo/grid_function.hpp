#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fracthermo/errors.hpp"

namespace fracthermo {

/// Real function sampled on the uniform grid t_i = i/n, i = 0..n, of [0, 1].
class GridFunction {
public:
    GridFunction(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
        if (n_ < 2) {
            throw DomainError("GridFunction: need n >= 2 intervals, got " + std::to_string(n_));
        }
        if (values_.size() != n_ + 1) {
            throw DomainError("GridFunction: expected " + std::to_string(n_ + 1) +
                              " values, got " + std::to_string(values_.size()));
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw DomainError("GridFunction: non-finite value at index " + std::to_string(i));
            }
        }
    }

    static GridFunction constant(std::size_t n, double c) {
        return GridFunction(n, std::vector<double>(n + 1, c));
    }

    template <typename F>
        requires std::invocable<F&, double>
    static GridFunction sample(std::size_t n, F&& fn) {
        std::vector<double> v(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            v[i] = fn(node(n, i));
        }
        return GridFunction(n, std::move(v));
    }

    /// i-th node of an n-interval grid; exact at both ends.
    static double node(std::size_t n, std::size_t i) noexcept {
        return static_cast<double>(i) / static_cast<double>(n);
    }

    std::size_t intervals() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }
    double step() const noexcept { return 1.0 / static_cast<double>(n_); }
    double t(std::size_t i) const noexcept { return node(n_, i); }

    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

    double sup_norm() const {
        double m = 0.0;
        for (double v : values_) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }

    double min() const { return *std::min_element(values_.begin(), values_.end()); }
    double max() const { return *std::max_element(values_.begin(), values_.end()); }

    /// Piecewise-linear interpolant evaluated at x in [0, 1].
    double interpolate(double x) const {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw DomainError("GridFunction::interpolate: x outside [0, 1]: " + std::to_string(x));
        }
        const double pos = x * static_cast<double>(n_);
        std::size_t i = static_cast<std::size_t>(pos);
        if (i >= n_) {
            return values_[n_];
        }
        const double frac = pos - static_cast<double>(i);
        return values_[i] + frac * (values_[i + 1] - values_[i]);
    }

    bool same_grid(const GridFunction& other) const noexcept { return n_ == other.n_; }

private:
    std::size_t n_;
    std::vector<double> values_;
};

/// max_i |u_i - v_i| on a shared grid.
inline double sup_norm_distance(const GridFunction& u, const GridFunction& v) {
    if (!u.same_grid(v)) {
        throw DomainError("sup_norm_distance: grids differ (n=" + std::to_string(u.intervals()) +
                          " vs n=" + std::to_string(v.intervals()) + ")");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        m = std::max(m, std::abs(u[i] - v[i]));
    }
    return m;
}

}  // namespace fracthermo

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "fracthermo/errors.hpp"

namespace fracthermo::lab {

// A finite-dimensional check of the generalized contraction principle: the
// map on C = [-2,-1] u [1,2] u {0} in R that flips C1 onto C2 and collapses
// C2 and {0} to 0, with phi(t) = t^2 and psi(t) = t^2 / 100000.

enum class Piece { negative, positive, zero };

class ExamplePoint {
public:
    explicit ExamplePoint(double x) : x_(x) {
        if (!contains(x)) {
            throw DomainError("ExamplePoint: " + std::to_string(x) + " is not in [-2,-1] u [1,2] u {0}");
        }
    }

    static bool contains(double x) noexcept {
        return (x >= -2.0 && x <= -1.0) || (x >= 1.0 && x <= 2.0) || x == 0.0;
    }

    double value() const noexcept { return x_; }

    Piece piece() const noexcept {
        if (x_ < 0.0) return Piece::negative;
        if (x_ > 0.0) return Piece::positive;
        return Piece::zero;
    }

private:
    double x_;
};

/// T x = -x on [-2,-1], 0 on [1,2] and at 0.
inline ExamplePoint example_map(ExamplePoint x) {
    return ExamplePoint(x.piece() == Piece::negative ? -x.value() : 0.0);
}

/// x R y iff both lie in [-2,-1], both in [1,2], or x = y = 0.
inline bool example_related(ExamplePoint x, ExamplePoint y) noexcept {
    return x.piece() == y.piece();
}

inline double example_phi(double t) { return t * t; }
inline double example_psi(double t) { return t * t / 100000.0; }

/// phi(|Tx - Ty|) + psi(|x - y|) - phi(|Tx - y|); the inequality holds when
/// this is <= 0.
inline double example_defect(ExamplePoint x, ExamplePoint y) {
    const double tx = example_map(x).value();
    const double ty = example_map(y).value();
    return example_phi(std::abs(tx - ty)) + example_psi(std::abs(x.value() - y.value())) -
           example_phi(std::abs(tx - y.value()));
}

struct LabReport {
    std::size_t pairs = 0;
    std::size_t violations = 0;
    std::size_t order_violations = 0;
    double worst_defect = -std::numeric_limits<double>::infinity();
    std::size_t orbit_starts = 0;
    std::size_t orbit_failures = 0;
    std::size_t max_orbit_length = 0;

    bool ok() const noexcept {
        return violations == 0 && order_violations == 0 && orbit_failures == 0;
    }
};

inline constexpr double lab_slack = 1e-12;
inline constexpr std::size_t lab_orbit_starts = 100;
inline constexpr std::size_t lab_orbit_limit = 3;

namespace detail {

inline ExamplePoint draw(std::mt19937_64& rng, Piece piece) {
    std::uniform_real_distribution<double> within(1.0, 2.0);
    switch (piece) {
    case Piece::negative:
        return ExamplePoint(-within(rng));
    case Piece::positive:
        return ExamplePoint(within(rng));
    case Piece::zero:
        break;
    }
    return ExamplePoint(0.0);
}

inline Piece draw_piece(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    return static_cast<Piece>(pick(rng));
}

}  // namespace detail

/// Samples related pairs (piece first, then uniform within it) and counts
/// violations of the contraction inequality and of order preservation; then
/// runs Picard orbits from seeded starts and checks they reach 0 within
/// three steps.
inline LabReport example_verify(std::size_t sample_count, std::uint64_t seed) {
    if (sample_count == 0) {
        throw DomainError("example_verify: sample_count must be >= 1");
    }
    std::mt19937_64 rng(seed);
    LabReport rep;
    for (std::size_t m = 0; m < sample_count; ++m) {
        const Piece piece = detail::draw_piece(rng);
        const ExamplePoint x = detail::draw(rng, piece);
        const ExamplePoint y = detail::draw(rng, piece);
        ++rep.pairs;
        const double d = example_defect(x, y);
        rep.worst_defect = std::max(rep.worst_defect, d);
        if (d > lab_slack) {
            ++rep.violations;
        }
        if (!example_related(example_map(x), example_map(y))) {
            ++rep.order_violations;
        }
    }

    for (std::size_t m = 0; m < lab_orbit_starts; ++m) {
        ExamplePoint x = detail::draw(rng, detail::draw_piece(rng));
        ++rep.orbit_starts;
        std::size_t steps = 0;
        while (x.value() != 0.0 && steps < lab_orbit_limit) {
            x = example_map(x);
            ++steps;
        }
        rep.max_orbit_length = std::max(rep.max_orbit_length, steps);
        if (x.value() != 0.0) {
            ++rep.orbit_failures;
        }
    }
    return rep;
}

}  // namespace fracthermo::lab

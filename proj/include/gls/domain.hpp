#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace gls {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Cap applied to unbounded moment-order domains whenever a grid is built.
// Grid results over a truncated domain are one-sided (see conjugate.hpp).
inline constexpr double kDefaultPMax = 1e3;

// Relative inward offset for excluded endpoints; excluded endpoints are
// never evaluated directly.
inline constexpr double kEndpointNudge = 1e-9;

// Interval of moment orders inside [1, inf]. p_hi = inf forces an open
// right end.
struct PDomain {
    double p_lo = 1.0;
    double p_hi = kInf;
    bool include_lo = true;
    bool include_hi = false;

    PDomain() = default;
    PDomain(double lo, double hi, bool inc_lo = true, bool inc_hi = false);

    bool contains(double p) const;

    // Effective evaluation edges: excluded endpoints nudged inward, an
    // unbounded right end truncated at p_cap.
    double grid_lo() const;
    double grid_hi(double p_cap = kDefaultPMax) const;

    // Intersection; throws std::invalid_argument when empty.
    static PDomain intersect(const PDomain& a, const PDomain& b);
};

// n points equi-spaced in ln x over [lo, hi], endpoints exact. Grids of
// size 2^j+1 over the same interval are nested bit-for-bit.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

// log_grid over the evaluable part of a domain.
std::vector<double> domain_grid(const PDomain& dom, std::size_t n,
                                double p_cap = kDefaultPMax);

}  // namespace gls

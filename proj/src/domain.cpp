#include "gls/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace gls {

PDomain::PDomain(double lo, double hi, bool inc_lo, bool inc_hi)
    : p_lo(lo), p_hi(hi), include_lo(inc_lo), include_hi(inc_hi) {
    if (!(p_lo >= 1.0)) throw std::invalid_argument("PDomain: p_lo must be >= 1");
    if (!(p_lo < p_hi)) throw std::invalid_argument("PDomain: need p_lo < p_hi");
    if (std::isinf(p_hi) && include_hi)
        throw std::invalid_argument("PDomain: p_hi = inf cannot be included");
}

bool PDomain::contains(double p) const {
    if (!std::isfinite(p)) return false;
    if (p < p_lo || (p == p_lo && !include_lo)) return false;
    if (p > p_hi || (p == p_hi && !include_hi)) return false;
    return true;
}

double PDomain::grid_lo() const {
    return include_lo ? p_lo : p_lo * (1.0 + kEndpointNudge);
}

double PDomain::grid_hi(double p_cap) const {
    if (std::isinf(p_hi)) return p_cap;
    return include_hi ? p_hi : p_hi * (1.0 - kEndpointNudge);
}

PDomain PDomain::intersect(const PDomain& a, const PDomain& b) {
    double lo = std::max(a.p_lo, b.p_lo);
    double hi = std::min(a.p_hi, b.p_hi);
    if (!(lo < hi))
        throw std::invalid_argument("PDomain::intersect: empty intersection");
    bool inc_lo = a.contains(lo) && b.contains(lo);
    bool inc_hi = std::isinf(hi) ? false : (a.contains(hi) && b.contains(hi));
    return PDomain(lo, hi, inc_lo, inc_hi);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
        throw std::invalid_argument("log_grid: need 0 < lo < hi < inf");
    if (n < 2) throw std::invalid_argument("log_grid: need n >= 2");
    std::vector<double> g(n);
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    g.front() = lo;
    g.back() = hi;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
        g[i] = std::exp(llo + frac * (lhi - llo));
    }
    return g;
}

std::vector<double> domain_grid(const PDomain& dom, std::size_t n, double p_cap) {
    const double lo = dom.grid_lo();
    const double hi = dom.grid_hi(p_cap);
    if (!(hi > lo))
        throw std::invalid_argument(
            "domain_grid: domain is empty after truncation at the cap");
    return log_grid(lo, hi, n);
}

}  // namespace gls

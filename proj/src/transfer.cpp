#include "gls/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gls/csv.hpp"
#include "gls/optimize.hpp"

namespace gls {

RSlice RSlice::single(double r) {
    RSlice s;
    s.is_discrete = true;
    s.points = {r};
    return s;
}

RSlice RSlice::discrete(std::vector<double> rs) {
    RSlice s;
    s.is_discrete = true;
    std::sort(rs.begin(), rs.end());
    s.points = std::move(rs);
    return s;
}

RSlice RSlice::range(PDomain d) {
    RSlice s;
    s.is_discrete = false;
    s.interval = d;
    return s;
}

bool RSlice::empty() const { return is_discrete && points.empty(); }

bool TransferKernel::admits(double p) const {
    if (!p_points.empty()) {
        for (double q : p_points)
            if (std::fabs(p - q) <= 1e-12 * std::max(1.0, std::fabs(q)))
                return true;
        return false;
    }
    return p_domain.contains(p);
}

namespace {

// The transfer construction composes g with moment upper bounds, which is
// only sound when g is nondecreasing in z; reject kernels that are not.
void spot_check_z_monotone(const TransferKernel& k) {
    constexpr double z_probes[][2] = {
        {0.0, 0.5}, {0.5, 1.5}, {1.0, 3.0}, {2.0, 10.0}};
    std::vector<double> p_probes;
    if (!k.p_points.empty()) {
        p_probes.push_back(k.p_points.front());
        p_probes.push_back(k.p_points.back());
    } else {
        p_probes = domain_grid(k.p_domain, 5);
    }
    for (double p : p_probes) {
        const RSlice slice = k.slice_of(p);
        std::vector<double> r_probes;
        if (slice.is_discrete) {
            if (slice.points.empty()) continue;
            r_probes.push_back(slice.points.front());
            r_probes.push_back(slice.points.back());
        } else {
            r_probes = domain_grid(slice.interval, 3);
        }
        for (double r : r_probes)
            for (const auto& z : z_probes) {
                const double g1 = k.g(p, r, z[0]);
                const double g2 = k.g(p, r, z[1]);
                if (std::isfinite(g1) && std::isfinite(g2) &&
                    g1 > g2 * (1.0 + 1e-9) + 1e-12)
                    throw std::invalid_argument(
                        "transfer kernel '" + k.tag +
                        "' is not nondecreasing in z");
            }
    }
}

SliceInfimum slice_infimum(const RSlice& slice,
                           const std::function<double(double)>& objective,
                           const SliceSearchOptions& opt) {
    if (slice.empty())
        throw std::invalid_argument("transfer: empty slice R(p)");
    SliceInfimum best{kInf, std::numeric_limits<double>::quiet_NaN(), false};
    if (slice.is_discrete) {
        for (double r : slice.points) {  // ascending: ties go to smallest r
            const double v = objective(r);
            if (std::isfinite(v) && v < best.value) best = {v, r, true};
        }
        return best;
    }
    const std::vector<double> grid =
        domain_grid(slice.interval, opt.grid_size, opt.r_cap);
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = objective(grid[i]);
        if (std::isfinite(v) && v < best.value) {
            best = {v, grid[i], true};
            best_idx = i;
        }
    }
    if (best.finite && opt.refine_iters > 0) {
        const double a = grid[best_idx > 0 ? best_idx - 1 : 0];
        const double b = grid[std::min(best_idx + 1, grid.size() - 1)];
        if (b > a) {
            const detail::BestPoint r =
                detail::golden_min(objective, a, b, opt.refine_iters);
            if (std::isfinite(r.value) && r.value < best.value)
                best = {r.value, r.x, true};
        }
    }
    return best;
}

}  // namespace

TransferKernel make_kernel(std::string tag, PDomain p_domain,
                           std::function<RSlice(double)> slice_of,
                           std::function<double(double, double, double)> g,
                           double p0) {
    TransferKernel k;
    k.tag = std::move(tag);
    k.p_domain = p_domain;
    k.slice_of = std::move(slice_of);
    k.g = std::move(g);
    k.p0 = p0 > 0.0 ? p0 : p_domain.grid_lo();
    if (!k.slice_of || !k.g)
        throw std::invalid_argument("make_kernel: null callable");
    spot_check_z_monotone(k);
    return k;
}

TransferKernel doob_kernel(double p_hi, double p0) {
    return make_kernel(
        "doob", PDomain(1.0, p_hi, false, false),
        [](double p) { return RSlice::single(p); },
        [](double p, double, double z) { return p / (p - 1.0) * z; }, p0);
}

TransferKernel bdg_kernel(double p_hi, double p0) {
    const double root_e = std::exp(0.5);
    return make_kernel(
        "bdg", PDomain(2.0, p_hi, true, false),
        [](double p) { return RSlice::single(0.5 * p); },
        [root_e](double, double, double z) { return root_e * std::sqrt(z); },
        p0);
}

TransferKernel custom_kernel(std::vector<CustomKernelRow> rows) {
    if (rows.empty())
        throw std::invalid_argument("custom_kernel: no rows");
    for (const auto& row : rows) {
        if (!(row.p >= 1.0) || !(row.r >= 1.0))
            throw std::invalid_argument("custom_kernel: orders must be >= 1");
        if (!(row.factor >= 0.0) || !std::isfinite(row.factor))
            throw std::invalid_argument("custom_kernel: factor must be >= 0");
        if (!(row.alpha > 0.0))
            throw std::invalid_argument("custom_kernel: alpha must be > 0");
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.p < b.p || (a.p == b.p && a.r < b.r);
    });
    std::vector<double> ps;
    for (const auto& row : rows)
        if (ps.empty() || row.p != ps.back()) ps.push_back(row.p);

    TransferKernel k;
    k.tag = "custom";
    k.p_domain = PDomain(ps.front(), std::max(ps.back(), ps.front() + 1.0),
                         true, true);
    k.p_points = ps;
    auto shared = std::make_shared<std::vector<CustomKernelRow>>(std::move(rows));
    k.slice_of = [shared](double p) {
        std::vector<double> rs;
        for (const auto& row : *shared)
            if (std::fabs(row.p - p) <= 1e-12 * std::max(1.0, std::fabs(p)))
                rs.push_back(row.r);
        return RSlice::discrete(std::move(rs));
    };
    k.g = [shared](double p, double r, double z) {
        for (const auto& row : *shared)
            if (std::fabs(row.p - p) <= 1e-12 * std::max(1.0, std::fabs(p)) &&
                std::fabs(row.r - r) <= 1e-12 * std::max(1.0, std::fabs(r)))
                return row.factor * std::pow(z, row.alpha);
        return kInf;
    };
    k.p0 = ps.front();
    spot_check_z_monotone(k);
    return k;
}

SliceInfimum psi_from_kernel(const TransferKernel& kernel,
                             const MomentOracle& eta, double p,
                             const SliceSearchOptions& opt) {
    if (!(p >= 1.0))
        throw std::invalid_argument("psi_from_kernel: need p >= 1");
    const bool below = p <= kernel.p0;
    if (!below && !kernel.admits(p))
        throw std::domain_error("psi_from_kernel: p = " + std::to_string(p) +
                                " outside U for kernel '" + kernel.tag + "'");
    const double p_arg = below ? kernel.p0 : p;
    const RSlice slice = kernel.slice_of(p_arg);
    auto objective = [&](double r) {
        const double moment = eta.eval(r);
        if (!std::isfinite(moment)) return kInf;  // skip, not fatal
        return kernel.g(p_arg, r, moment);
    };
    return slice_infimum(slice, objective, opt);
}

SliceInfimum tau_linear(const std::function<double(double, double)>& v,
                        const GeneratingFunction& beta, double p,
                        const RSlice& slice, const SliceSearchOptions& opt) {
    auto objective = [&](double r) {
        const double b = beta(r);
        if (!std::isfinite(b)) return kInf;
        return v(p, r) * b;
    };
    return slice_infimum(slice, objective, opt);
}

SliceInfimum power_transfer(const std::function<double(double, double)>& v1,
                            double alpha, const GeneratingFunction& beta,
                            double p, const RSlice& slice,
                            const SliceSearchOptions& opt) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("power_transfer: need alpha > 0");
    auto objective = [&](double r) {
        const double b = beta(r);
        if (!std::isfinite(b)) return kInf;
        return v1(p, r) * std::pow(b, alpha);
    };
    return slice_infimum(slice, objective, opt);
}

GeneratingFunction build_psi_function(const TransferKernel& kernel,
                                      const MomentOracle& eta,
                                      const std::vector<double>& p_grid,
                                      const SliceSearchOptions& opt) {
    if (p_grid.size() < 2)
        throw std::invalid_argument("build_psi_function: need >= 2 grid points");
    std::vector<double> values;
    values.reserve(p_grid.size());
    for (double p : p_grid) {
        const SliceInfimum inf = psi_from_kernel(kernel, eta, p, opt);
        if (!inf.finite)
            throw std::runtime_error(
                "build_psi_function: infimum non-finite at p = " +
                std::to_string(p));
        values.push_back(inf.value);
    }
    return make_table(p_grid, std::move(values),
                      "psi[" + kernel.tag + "," + eta.tag + "]");
}

}  // namespace gls

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "gls/domain.hpp"
#include "gls/generating.hpp"
#include "gls/moments.hpp"

namespace gls {

// The r-values paired with a given order p: an interval or a finite set.
struct RSlice {
    bool is_discrete = true;
    PDomain interval;
    std::vector<double> points;  // sorted ascending when discrete

    static RSlice single(double r);
    static RSlice discrete(std::vector<double> rs);
    static RSlice range(PDomain d);

    bool empty() const;
};

// The kernel g(p, r, z) of a moment-transfer inequality
// |xi|_p <= g(p, r, |eta|_r) on the slice family D = {(p, r): r in R(p)}.
// g must be nondecreasing in z: composing with a norm upper bound
// |eta|_r <= beta(r) ||eta|| is only sound for z-monotone kernels. The
// factories spot-check this and reject violations.
struct TransferKernel {
    std::string tag;
    PDomain p_domain;               // U as an interval
    std::vector<double> p_points;   // nonempty when U is a finite set
    std::function<RSlice(double)> slice_of;
    std::function<double(double, double, double)> g;
    double p0;                      // branch order of the psi construction

    bool admits(double p) const;    // p in U
};

// r = p, g = (p/(p-1)) z. U = (1, p_hi). Default p0 is the nudged infimum
// of U; pass an explicit one for anything quantitative.
TransferKernel doob_kernel(double p_hi = kInf, double p0 = -1.0);

// r = p/2, g = sqrt(e) sqrt(z). U = [2, p_hi).
TransferKernel bdg_kernel(double p_hi = kInf, double p0 = 2.0);

struct CustomKernelRow {
    double p;
    double r;
    double factor;  // >= 0
    double alpha;   // > 0
};

// Discrete kernel from rows (p, r, factor, alpha): g = factor * z^alpha,
// R(p) = {r_i : p_i = p}.
TransferKernel custom_kernel(std::vector<CustomKernelRow> rows);

// General slice-shaped kernel; validates z-monotonicity by spot checks.
TransferKernel make_kernel(std::string tag, PDomain p_domain,
                           std::function<RSlice(double)> slice_of,
                           std::function<double(double, double, double)> g,
                           double p0);

struct SliceSearchOptions {
    std::size_t grid_size = 256;  // scan points for interval slices
    int refine_iters = 64;        // golden-section iterations
    double r_cap = kDefaultPMax;
};

// Result of an infimum over a slice. When the oracle is non-finite on all
// of the slice the value is +inf and finite is false; non-finite values at
// individual r are skipped.
struct SliceInfimum {
    double value;
    double r;  // where the infimum was attained (ties toward smallest r)
    bool finite;
};

// psi_{p0}[eta](p) = inf_{r in R(p)} g(p, r, |eta|_r) for p > p0, and the
// constant inf_{r in R(p0)} g(p0, r, |eta|_r) for p <= p0, so that
// |xi|_p <= psi(p) on U. Grid infima are upper estimates of the true
// infimum, which keeps the transferred inequality valid.
SliceInfimum psi_from_kernel(const TransferKernel& kernel,
                             const MomentOracle& eta, double p,
                             const SliceSearchOptions& opt = {});

// tau(p) = inf_{r in slice} v(p, r) beta(r).
SliceInfimum tau_linear(const std::function<double(double, double)>& v,
                        const GeneratingFunction& beta, double p,
                        const RSlice& slice,
                        const SliceSearchOptions& opt = {});

// tau_alpha(p) = inf_{r in slice} v1(p, r) beta(r)^alpha, alpha > 0, so
// that |xi|_p <= tau_alpha(p) ||eta||_{G beta}^alpha.
SliceInfimum power_transfer(const std::function<double(double, double)>& v1,
                            double alpha, const GeneratingFunction& beta,
                            double p, const RSlice& slice,
                            const SliceSearchOptions& opt = {});

// Materializes psi_from_kernel on a strictly increasing grid as a
// table-backed generating function (log-log interpolation). Throws when
// any grid point yields a non-finite value.
GeneratingFunction build_psi_function(const TransferKernel& kernel,
                                      const MomentOracle& eta,
                                      const std::vector<double>& p_grid,
                                      const SliceSearchOptions& opt = {});

}  // namespace gls

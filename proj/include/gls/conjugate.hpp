#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gls/domain.hpp"
#include "gls/generating.hpp"
#include "gls/quadrature.hpp"

namespace gls {

// h(p) = p ln psi(p). May be negative where psi < 1; no flooring.
double h_of(const GeneratingFunction& psi, double p);

struct FenchelOptions {
    // Scan size for the inner maximization; rounded up to 2^j + 1 so that
    // refined scan grids are supersets of coarser ones.
    std::size_t p_grid_size = 512;
    // Golden-section iterations around the best scan point; 0 disables.
    int refine_iters = 64;
    // Truncation cap for unbounded domains. Truncation can only shrink
    // h*, which keeps the induced tail bound valid.
    double p_cap = kDefaultPMax;
};

// Gridded conjugate h*(y) = sup_p (p y - h(p)). hstar is nondecreasing and
// midpoint-convex on the grid; argmax_p records where each supremum was
// attained (inside the truncated/nudged domain).
struct ConjugateTable {
    std::vector<double> y_grid;
    std::vector<double> hstar;
    std::vector<double> argmax_p;
    PDomain source_domain;

    // Conservative lookup: the value at the nearest grid y at or below the
    // query (h* is nondecreasing, so this can only enlarge the tail bound).
    double hstar_at(double y) const;
};

// Validates the table invariants; throws std::logic_error on violation.
// mono_tol is an absolute allowance for the nondecreasing check.
void validate(const ConjugateTable& table, double mono_tol = 0.0);

// Computes h* on y_grid (sorted ascending). The supremum over p uses a log
// scan plus golden-section refinement of the best bracket; the result is a
// lower estimate of the true conjugate, hence the tail bound stays valid.
// Throws when h is non-finite at a scanned order.
ConjugateTable fenchel_transform(const GeneratingFunction& psi,
                                 std::vector<double> y_grid,
                                 const FenchelOptions& opt = {});
ConjugateTable fenchel_transform(const GeneratingFunction& psi,
                                 std::vector<double> y_grid,
                                 std::size_t p_grid_size);

// t -> exp(-h*(ln(t/C))) clamped into [0, 1], equal to 1 below C*e.
class TailBound {
public:
    TailBound(ConjugateTable table, double scale_C);

    double operator()(double t) const;
    double valid_from() const { return valid_from_; }
    double scale() const { return scale_C_; }
    const ConjugateTable& table() const { return table_; }

private:
    ConjugateTable table_;
    double scale_C_;
    double valid_from_;
};

// Tabulates h* on [1, ln(t_max/scale_C)] and wraps it as a TailBound.
TailBound make_tail_bound(const GeneratingFunction& psi, double scale_C,
                          double t_max, const FenchelOptions& opt = {},
                          std::size_t y_grid_size = 129);

// Pointwise tail estimate exp(-h*(ln(t/scale_C))): 1 for t < scale_C * e,
// otherwise a fresh conjugate evaluation at y = ln(t/scale_C).
double tail_from_psi(const GeneratingFunction& psi, double scale_C, double t,
                     const FenchelOptions& opt = {});

// S(x) = exp(-h*(ln x)) without the validity clamp.
double survival_from_psi(const GeneratingFunction& psi, double x,
                         const FenchelOptions& opt = {});

struct SubgaussianRow {
    double t;
    double bound;
    double reference;
    double rel_err;
};

// For psi(p) = p^{1/m} the induced bound must match exp(-t^m/(m e)) on
// [e, 10]. Reports tolerance violations instead of throwing.
struct SubgaussianReport {
    double m = 0.0;
    double c_implied = 0.0;     // fitted from the computed bounds
    double c_closed_form = 0.0; // 1/(m e)
    double max_rel_err = 0.0;
    bool pass = false;
    std::vector<SubgaussianRow> rows;
};

SubgaussianReport subgaussian_family_check(double m,
                                           std::size_t t_grid_size = 64,
                                           double tol = 1e-3);

// p-th root of int_0^inf p t^{p-1} tail(t) dt via panelwise adaptive
// quadrature over doubling intervals. tail must be nonincreasing with
// tail(0) <= 1. Throws std::runtime_error when the integrand has not
// decayed by the cutoff (divergence) or a panel fails to converge.
double moments_from_tail(const std::function<double(double)>& tail, double p,
                         const QuadratureConfig& cfg = {});

// CSV export, header "y,hstar,argmax_p".
void write_conjugate_csv(const std::string& path, const ConjugateTable& t);

// CSV export on a log t-grid, header "t,bound".
void write_tailbound_csv(const std::string& path, const TailBound& bound,
                         double t_lo, double t_hi, std::size_t n);

}  // namespace gls

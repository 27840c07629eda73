#include "gls/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "gls/csv.hpp"
#include "gls/optimize.hpp"

namespace gls {

double h_of(const GeneratingFunction& psi, double p) {
    return p * std::log(psi(p));
}

namespace {

// Round up to 2^j + 1 so that a finer scan grid contains every point of a
// coarser one and the scan supremum is monotone under refinement.
std::size_t nested_grid_size(std::size_t n) {
    std::size_t k = 16;
    while (k + 1 < n) k *= 2;
    return k + 1;
}

}  // namespace

double ConjugateTable::hstar_at(double y) const {
    if (y <= y_grid.front()) return hstar.front();
    if (y >= y_grid.back()) return hstar.back();
    auto it = std::upper_bound(y_grid.begin(), y_grid.end(), y);
    return hstar[static_cast<std::size_t>(it - y_grid.begin()) - 1];
}

void validate(const ConjugateTable& t, double mono_tol) {
    const std::size_t n = t.y_grid.size();
    if (n == 0 || t.hstar.size() != n || t.argmax_p.size() != n)
        throw std::logic_error("ConjugateTable: inconsistent array lengths");
    const double lo = t.source_domain.grid_lo();
    const double hi = t.source_domain.grid_hi(kInf);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(t.y_grid[i] >= t.y_grid[i - 1]))
            throw std::logic_error("ConjugateTable: y grid not sorted");
        if (i > 0 && t.hstar[i] < t.hstar[i - 1] - mono_tol)
            throw std::logic_error("ConjugateTable: hstar decreasing in y");
        if (!(t.argmax_p[i] >= lo && t.argmax_p[i] <= hi))
            throw std::logic_error("ConjugateTable: argmax outside domain");
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double tol = 1e-9 * (1.0 + std::fabs(t.hstar[i]));
        if (t.hstar[i] > 0.5 * (t.hstar[i - 1] + t.hstar[i + 1]) + tol)
            throw std::logic_error("ConjugateTable: midpoint convexity violated");
    }
}

ConjugateTable fenchel_transform(const GeneratingFunction& psi,
                                 std::vector<double> y_grid,
                                 const FenchelOptions& opt) {
    if (y_grid.empty())
        throw std::invalid_argument("fenchel_transform: empty y grid");
    for (std::size_t i = 1; i < y_grid.size(); ++i)
        if (!(y_grid[i] >= y_grid[i - 1]))
            throw std::invalid_argument("fenchel_transform: y grid not sorted");
    if (opt.p_grid_size < 16)
        throw std::invalid_argument("fenchel_transform: need p_grid_size >= 16");

    const std::vector<double> p_grid =
        domain_grid(psi.domain(), nested_grid_size(opt.p_grid_size), opt.p_cap);
    std::vector<double> h(p_grid.size());
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        h[i] = h_of(psi, p_grid[i]);
        if (!std::isfinite(h[i]))
            throw std::runtime_error(
                "fenchel_transform: h non-finite at p = " +
                std::to_string(p_grid[i]) + " (psi '" + psi.tag() + "')");
    }

    ConjugateTable table;
    table.y_grid = std::move(y_grid);
    table.hstar.reserve(table.y_grid.size());
    table.argmax_p.reserve(table.y_grid.size());
    table.source_domain = psi.domain();

    const std::size_t n = p_grid.size();
    for (const double y : table.y_grid) {
        std::size_t best = 0;
        double best_val = p_grid[0] * y - h[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double v = p_grid[i] * y - h[i];
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        double best_p = p_grid[best];
        if (opt.refine_iters > 0) {
            const double a = p_grid[best > 0 ? best - 1 : 0];
            const double b = p_grid[std::min(best + 1, n - 1)];
            if (b > a) {
                auto objective = [&psi, y](double p) {
                    return p * y - h_of(psi, p);
                };
                const detail::BestPoint r =
                    detail::golden_max(objective, a, b, opt.refine_iters);
                if (r.value > best_val) {
                    best_val = r.value;
                    best_p = r.x;
                }
            }
        }
        table.hstar.push_back(best_val);
        table.argmax_p.push_back(best_p);
    }
    // fp rounding allowance: refined values of adjacent y can differ by a
    // few ulp even though the exact conjugate is nondecreasing
    validate(table, 1e-12 * (1.0 + std::fabs(table.hstar.back())));
    return table;
}

ConjugateTable fenchel_transform(const GeneratingFunction& psi,
                                 std::vector<double> y_grid,
                                 std::size_t p_grid_size) {
    FenchelOptions opt;
    opt.p_grid_size = p_grid_size;
    return fenchel_transform(psi, std::move(y_grid), opt);
}

TailBound::TailBound(ConjugateTable table, double scale_C)
    : table_(std::move(table)), scale_C_(scale_C),
      valid_from_(scale_C * std::numbers::e) {
    if (!(scale_C > 0.0) || !std::isfinite(scale_C))
        throw std::invalid_argument("TailBound: need finite scale_C > 0");
    if (table_.y_grid.empty())
        throw std::invalid_argument("TailBound: empty conjugate table");
}

double TailBound::operator()(double t) const {
    // validity threshold with a relative allowance so that thresholds
    // written with fewer digits than e still count as inside
    if (!(t >= valid_from_ * (1.0 - 1e-9))) return 1.0;
    const double h = table_.hstar_at(std::log(t / scale_C_));
    return std::clamp(std::exp(-h), 0.0, 1.0);
}

TailBound make_tail_bound(const GeneratingFunction& psi, double scale_C,
                          double t_max, const FenchelOptions& opt,
                          std::size_t y_grid_size) {
    if (!(scale_C > 0.0))
        throw std::invalid_argument("make_tail_bound: need scale_C > 0");
    if (y_grid_size < 2)
        throw std::invalid_argument("make_tail_bound: need y_grid_size >= 2");
    const double y_lo = 1.0;
    const double y_hi = std::max(1.0 + 1e-6, std::log(t_max / scale_C));
    std::vector<double> ys(y_grid_size);
    for (std::size_t i = 0; i < y_grid_size; ++i)
        ys[i] = y_lo + (y_hi - y_lo) * static_cast<double>(i) /
                           static_cast<double>(y_grid_size - 1);
    return TailBound(fenchel_transform(psi, std::move(ys), opt), scale_C);
}

double tail_from_psi(const GeneratingFunction& psi, double scale_C, double t,
                     const FenchelOptions& opt) {
    if (!(scale_C > 0.0) || !std::isfinite(scale_C))
        throw std::invalid_argument("tail_from_psi: need finite scale_C > 0");
    const double ratio = t / scale_C;
    if (!(ratio >= std::numbers::e * (1.0 - 1e-9))) return 1.0;
    const ConjugateTable single =
        fenchel_transform(psi, {std::log(ratio)}, opt);
    return std::clamp(std::exp(-single.hstar.front()), 0.0, 1.0);
}

double survival_from_psi(const GeneratingFunction& psi, double x,
                         const FenchelOptions& opt) {
    if (!(x > 0.0))
        throw std::invalid_argument("survival_from_psi: need x > 0");
    const ConjugateTable single = fenchel_transform(psi, {std::log(x)}, opt);
    return std::exp(-single.hstar.front());
}

SubgaussianReport subgaussian_family_check(double m, std::size_t t_grid_size,
                                           double tol) {
    if (!(m > 0.0))
        throw std::invalid_argument("subgaussian_family_check: need m > 0");
    SubgaussianReport rep;
    rep.m = m;
    rep.c_closed_form = 1.0 / (m * std::numbers::e);

    // the stationary order e^{m ln t - 1} must stay inside the domain
    const double p_need = 2.0 * std::exp(m * std::log(10.0) - 1.0);
    const double p_hi = std::max(kDefaultPMax, p_need);
    const GeneratingFunction psi = make_power(m, PDomain(1.0, p_hi, true, true));

    double num = 0.0, den = 0.0;
    for (double t : log_grid(std::numbers::e, 10.0, t_grid_size)) {
        const double bound = tail_from_psi(psi, 1.0, t);
        const double reference = std::exp(-std::pow(t, m) * rep.c_closed_form);
        const double rel_err = std::fabs(bound - reference) / reference;
        rep.rows.push_back({t, bound, reference, rel_err});
        rep.max_rel_err = std::max(rep.max_rel_err, rel_err);
        const double tm = std::pow(t, m);
        num += -std::log(bound) * tm;
        den += tm * tm;
    }
    rep.c_implied = num / den;
    const double c_err =
        std::fabs(rep.c_implied - rep.c_closed_form) / rep.c_closed_form;
    rep.pass = rep.max_rel_err <= tol && c_err <= tol;
    return rep;
}

double moments_from_tail(const std::function<double(double)>& tail, double p,
                         const QuadratureConfig& cfg) {
    if (!(p >= 1.0))
        throw std::invalid_argument("moments_from_tail: need p >= 1");
    auto integrand = [&tail, p](double t) {
        return p * std::pow(t, p - 1.0) * tail(t);
    };
    double total = 0.0;
    int quiet_panels = 0;
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < 64; ++k) {
        const QuadResult part = integrate_adaptive(integrand, lo, hi, cfg);
        if (!part.converged)
            throw std::runtime_error(
                "moments_from_tail: quadrature failed to converge on [" +
                std::to_string(lo) + ", " + std::to_string(hi) + "]");
        total += part.value;
        if (std::fabs(part.value) <= 1e-16 * std::fabs(total))
            ++quiet_panels;
        else
            quiet_panels = 0;
        if (quiet_panels >= 3) return std::pow(total, 1.0 / p);
        lo = hi;
        hi *= 2.0;
    }
    throw std::runtime_error(
        "moments_from_tail: integrand still contributing at t = 2^63; "
        "tail does not decay fast enough for p = " +
        std::to_string(p));
}

void write_conjugate_csv(const std::string& path, const ConjugateTable& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "y,hstar,argmax_p\n";
    for (std::size_t i = 0; i < t.y_grid.size(); ++i)
        out << format_double(t.y_grid[i]) << ',' << format_double(t.hstar[i])
            << ',' << format_double(t.argmax_p[i]) << '\n';
}

void write_tailbound_csv(const std::string& path, const TailBound& bound,
                         double t_lo, double t_hi, std::size_t n) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,bound\n";
    for (double t : log_grid(t_lo, t_hi, n))
        out << format_double(t) << ',' << format_double(bound(t)) << '\n';
}

}  // namespace gls

#include "gls/moments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "gls/csv.hpp"

namespace gls {

EmpiricalSample::EmpiricalSample(std::vector<double> values,
                                 std::string seed_info)
    : values_(std::move(values)), seed_info_(std::move(seed_info)) {
    if (values_.empty())
        throw std::invalid_argument("EmpiricalSample: need at least one value");
    for (double v : values_)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument(
                "EmpiricalSample: values must be finite and nonnegative");
    std::sort(values_.begin(), values_.end());
}

EmpiricalSample EmpiricalSample::load_csv(const std::string& path) {
    auto rows = read_numeric_csv(path, 1);
    std::vector<double> vals;
    vals.reserve(rows.size());
    for (const auto& r : rows) vals.push_back(r[0]);
    return EmpiricalSample(std::move(vals), "file:" + path);
}

void EmpiricalSample::store_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "value\n";
    for (double v : values_) out << format_double(v) << '\n';
}

double EmpiricalSample::quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("quantile: q must be in [0, 1]");
    const auto n = values_.size();
    auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(n)));
    return values_[std::min(idx, n - 1)];
}

MomentEstimate empirical_moment(const EmpiricalSample& s, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("empirical_moment: need p >= 1");
    const auto& v = s.values();
    const double n = static_cast<double>(v.size());
    const double top = s.max();
    if (top == 0.0) return {0.0, 0.0};

    // factor out the maximum: (v_i/top)^p <= 1, so no overflow for large p
    double sum = 0.0;
    std::vector<double> scaled_pows(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        scaled_pows[i] = std::pow(v[i] / top, p);
        sum += scaled_pows[i];
    }
    const double value = top * std::pow(sum / n, 1.0 / p);
    if (!std::isfinite(value))
        throw std::overflow_error("empirical_moment: estimate overflowed");

    if (v.size() < 2) return {value, 0.0};
    // leave-one-out values share the scaled sum, so the jackknife is O(n)
    double loo_mean = 0.0;
    std::vector<double> loo(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double rest = std::max(sum - scaled_pows[i], 0.0);
        loo[i] = top * std::pow(rest / (n - 1.0), 1.0 / p);
        loo_mean += loo[i];
    }
    loo_mean /= n;
    double ss = 0.0;
    for (double x : loo) ss += (x - loo_mean) * (x - loo_mean);
    const double se = std::sqrt((n - 1.0) / n * ss);
    return {value, se};
}

TailEstimate empirical_tail(const EmpiricalSample& s, double t) {
    const auto& v = s.values();
    const auto n = static_cast<double>(v.size());
    const auto above =
        static_cast<double>(v.end() - std::upper_bound(v.begin(), v.end(), t));
    const double f = above / n;
    return {f, std::sqrt(f * (1.0 - f) / n)};
}

MomentOracle constant_oracle(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("constant_oracle: need finite c > 0");
    return {"const(" + std::to_string(c) + ")", [c](double) { return c; },
            kInf};
}

MomentOracle normal_moment_oracle() {
    // |N(0,1)|_p = (2^{p/2} Gamma((p+1)/2) / sqrt(pi))^{1/p}
    auto eval = [](double p) {
        const double log_moment = 0.5 * p * std::log(2.0) +
                                  std::lgamma(0.5 * (p + 1.0)) -
                                  0.5 * std::log(std::acos(-1.0));
        return std::exp(log_moment / p);
    };
    return {"normal", eval, kInf};
}

MomentOracle exponential_moment_oracle() {
    auto eval = [](double p) { return std::exp(std::lgamma(p + 1.0) / p); };
    return {"exponential", eval, kInf};
}

MomentOracle sample_oracle(std::shared_ptr<const EmpiricalSample> s) {
    if (!s) throw std::invalid_argument("sample_oracle: null sample");
    auto eval = [s](double p) { return empirical_moment(*s, p).value; };
    return {"sample[" + s->seed_info() + "]", eval, kInf};
}

MomentOracle scale_oracle(const MomentOracle& base, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("scale_oracle: need finite c > 0");
    auto inner = base.eval;
    return {"scale(" + std::to_string(c) + "," + base.tag + ")",
            [inner, c](double p) { return c * inner(p); }, base.finite_up_to};
}

GridSup gls_norm(const MomentOracle& oracle, const GeneratingFunction& kappa,
                 std::size_t grid_size, double p_cap) {
    if (grid_size < 2)
        throw std::invalid_argument("gls_norm: need grid_size >= 2");
    PDomain common = kappa.domain();
    if (std::isfinite(oracle.finite_up_to))
        common = PDomain::intersect(
            common, PDomain(1.0, oracle.finite_up_to, true, true));
    GridSup best{-kInf, 0.0};
    for (double p : domain_grid(common, grid_size, p_cap)) {
        const double ratio = oracle.eval(p) / kappa(p);
        if (!std::isfinite(ratio))
            throw std::runtime_error("gls_norm: non-finite ratio at p = " +
                                     std::to_string(p) + " (oracle '" +
                                     oracle.tag + "')");
        if (ratio > best.value) best = {ratio, p};
    }
    return best;
}

GeneratingFunction natural_function(const MomentOracle& oracle,
                                    const PDomain& domain) {
    for (double p : domain_grid(domain, 64))
        if (!std::isfinite(oracle.eval(p)) || !(oracle.eval(p) > 0.0))
            throw std::invalid_argument(
                "natural_function: oracle non-finite or nonpositive at p = " +
                std::to_string(p));
    auto eval = oracle.eval;
    return GeneratingFunction(domain, std::move(eval),
                              "natural[" + oracle.tag + "]");
}

TailDominanceReport check_tail_dominance(const EmpiricalSample& s,
                                         const TailBound& bound,
                                         double slack_sigmas,
                                         std::size_t grid_size) {
    TailDominanceReport rep;
    rep.slack_sigmas = slack_sigmas;
    const double lo = bound.valid_from();
    const double hi = s.quantile(0.999);
    if (!(hi > lo)) return rep;  // bound only trivial on the sample range
    for (double t : log_grid(lo, hi, grid_size)) {
        const TailEstimate e = empirical_tail(s, t);
        const double b = bound(t);
        const double margin = b + slack_sigmas * e.std_error - e.fraction;
        const bool violation = margin < 0.0;
        rep.rows.push_back({t, e.fraction, e.std_error, b, violation});
        if (violation) ++rep.violations;
        rep.min_margin = std::min(rep.min_margin, margin);
    }
    return rep;
}

void write_tail_report_csv(const std::string& path,
                           const TailDominanceReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,empirical,stderr,bound,violation\n";
    for (const auto& r : report.rows)
        out << format_double(r.t) << ',' << format_double(r.empirical) << ','
            << format_double(r.std_error) << ',' << format_double(r.bound)
            << ',' << (r.violation ? 1 : 0) << '\n';
}

}  // namespace gls

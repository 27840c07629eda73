#include "gls/generating.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace gls {

GeneratingFunction::GeneratingFunction(PDomain domain,
                                       std::function<double(double)> eval,
                                       std::string tag)
    : domain_(domain), eval_(std::move(eval)), tag_(std::move(tag)) {
    if (!eval_) throw std::invalid_argument("GeneratingFunction: null evaluator");
}

double GeneratingFunction::operator()(double p) const {
    if (!domain_.contains(p))
        throw std::domain_error("GeneratingFunction '" + tag_ +
                                "': order outside domain");
    return eval_(p);
}

GeneratingFunction make_power(double m, PDomain domain) {
    if (!(m > 0.0)) throw std::invalid_argument("make_power: need m > 0");
    const double inv_m = 1.0 / m;
    return GeneratingFunction(
        domain, [inv_m](double p) { return std::pow(p, inv_m); },
        "power(" + std::to_string(m) + ")");
}

GeneratingFunction make_doob_factor(PDomain domain) {
    if (domain.contains(1.0))
        throw std::invalid_argument("make_doob_factor: domain must exclude p = 1");
    return GeneratingFunction(
        domain, [](double p) { return p / (p - 1.0); }, "doob");
}

GeneratingFunction make_constant(double c, PDomain domain) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("make_constant: need finite c > 0");
    return GeneratingFunction(
        domain, [c](double) { return c; }, "const(" + std::to_string(c) + ")");
}

GeneratingFunction make_table(std::vector<double> p_nodes,
                              std::vector<double> values, std::string tag) {
    if (p_nodes.size() != values.size() || p_nodes.size() < 2)
        throw std::invalid_argument("make_table: need >= 2 matching nodes");
    for (std::size_t i = 0; i < p_nodes.size(); ++i) {
        if (!(p_nodes[i] >= 1.0) || !std::isfinite(p_nodes[i]))
            throw std::invalid_argument("make_table: orders must be finite, >= 1");
        if (i > 0 && !(p_nodes[i] > p_nodes[i - 1]))
            throw std::invalid_argument("make_table: orders must strictly increase");
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw std::invalid_argument("make_table: values must be finite, > 0");
    }
    PDomain domain(p_nodes.front(), p_nodes.back(), true, true);
    std::vector<double> lx(p_nodes.size()), ly(values.size());
    for (std::size_t i = 0; i < p_nodes.size(); ++i) {
        lx[i] = std::log(p_nodes[i]);
        ly[i] = std::log(values[i]);
    }
    auto eval = [lx = std::move(lx), ly = std::move(ly),
                 nodes = std::move(p_nodes),
                 vals = std::move(values)](double p) {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), p);
        std::size_t j = static_cast<std::size_t>(it - nodes.begin());
        if (j < nodes.size() && nodes[j] == p) return vals[j];
        // p lies strictly between nodes j-1 and j
        const double x = std::log(p);
        const double w = (x - lx[j - 1]) / (lx[j] - lx[j - 1]);
        return std::exp(ly[j - 1] + w * (ly[j] - ly[j - 1]));
    };
    return GeneratingFunction(domain, std::move(eval), std::move(tag));
}

GeneratingFunction combine(const GeneratingFunction& f,
                           const GeneratingFunction& g, CombineMode mode) {
    PDomain domain = PDomain::intersect(f.domain(), g.domain());
    switch (mode) {
        case CombineMode::Product:
            return GeneratingFunction(
                domain, [f, g](double p) { return f(p) * g(p); },
                "(" + f.tag() + ")*(" + g.tag() + ")");
        case CombineMode::PointwiseMin:
            return GeneratingFunction(
                domain, [f, g](double p) { return std::min(f(p), g(p)); },
                "min(" + f.tag() + "," + g.tag() + ")");
    }
    throw std::logic_error("combine: unknown mode");
}

GeneratingFunction scale(const GeneratingFunction& f, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("scale: need finite c > 0");
    return GeneratingFunction(
        f.domain(), [f, c](double p) { return c * f(p); },
        "scale(" + std::to_string(c) + "," + f.tag() + ")");
}

GridSup dominance_constant(const GeneratingFunction& nu1,
                           const GeneratingFunction& nu2,
                           std::size_t grid_size, double p_cap) {
    if (grid_size < 2)
        throw std::invalid_argument("dominance_constant: need grid_size >= 2");
    PDomain common = PDomain::intersect(nu1.domain(), nu2.domain());
    GridSup best{-kInf, 0.0};
    for (double p : domain_grid(common, grid_size, p_cap)) {
        const double ratio = nu1(p) / nu2(p);
        if (!std::isfinite(ratio))
            throw std::runtime_error(
                "dominance_constant: non-finite ratio at p = " +
                std::to_string(p));
        if (ratio > best.value) best = {ratio, p};
    }
    return best;
}

}  // namespace gls

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "gls/domain.hpp"

namespace gls {

// Positive function psi(p) of the moment order, defining a Grand Lebesgue
// norm sup_p |zeta|_p / psi(p). Immutable after construction; evaluation is
// pure, so instances are safe to share across threads.
class GeneratingFunction {
public:
    GeneratingFunction(PDomain domain, std::function<double(double)> eval,
                       std::string tag);

    // Evaluates psi(p); throws std::domain_error outside the domain.
    double operator()(double p) const;

    const PDomain& domain() const { return domain_; }
    const std::string& tag() const { return tag_; }

private:
    PDomain domain_;
    std::function<double(double)> eval_;
    std::string tag_;
};

// psi(p) = p^{1/m}; rejects m <= 0.
GeneratingFunction make_power(double m, PDomain domain = PDomain());

// v(p) = p/(p-1); rejects domains that contain p = 1 as an included point.
GeneratingFunction make_doob_factor(
    PDomain domain = PDomain(1.0, kInf, false, false));

// psi(p) = c; rejects c <= 0.
GeneratingFunction make_constant(double c, PDomain domain = PDomain());

// Table-backed function, piecewise linear in (ln p, ln value). Node values
// must be finite and positive, node orders strictly increasing. The domain
// is the closed node range.
GeneratingFunction make_table(std::vector<double> p_nodes,
                              std::vector<double> values,
                              std::string tag = "table");

enum class CombineMode { Product, PointwiseMin };

// Pointwise combination on the intersected domain.
GeneratingFunction combine(const GeneratingFunction& f,
                           const GeneratingFunction& g, CombineMode mode);

// c * f with c > 0.
GeneratingFunction scale(const GeneratingFunction& f, double c);

// Grid supremum together with the order where it was attained. A grid
// supremum is a lower estimate of the true one; the argmax lets callers
// spot boundary maxima.
struct GridSup {
    double value;
    double argmax_p;
};

// C = sup_p nu1(p)/nu2(p) over a log grid on the intersected domain, so
// that nu1 <= C*nu2 there. Throws on an empty intersection or a non-finite
// ratio at a grid point.
GridSup dominance_constant(const GeneratingFunction& nu1,
                           const GeneratingFunction& nu2,
                           std::size_t grid_size,
                           double p_cap = kDefaultPMax);

}  // namespace gls

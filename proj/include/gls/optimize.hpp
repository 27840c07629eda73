#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace gls::detail {

struct BestPoint {
    double x;
    double value;
};

// Golden-section maximization on [a, b]; returns the best sampled point.
// Non-finite objective values are treated as -inf. Deterministic.
template <class F>
BestPoint golden_max(F&& f, double a, double b, int iters) {
    constexpr double invphi = 0.6180339887498949;
    BestPoint best{a, -std::numeric_limits<double>::infinity()};
    auto probe = [&](double x) {
        double v = f(x);
        if (std::isfinite(v) && v > best.value) best = {x, v};
        return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
    };
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = probe(x1);
    double f2 = probe(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = probe(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = probe(x1);
        }
    }
    return best;
}

// Golden-section minimization; non-finite values are treated as +inf.
template <class F>
BestPoint golden_min(F&& f, double a, double b, int iters) {
    auto neg = [&f](double x) {
        double v = f(x);
        return std::isfinite(v) ? -v : -std::numeric_limits<double>::infinity();
    };
    BestPoint bp = golden_max(neg, a, b, iters);
    return {bp.x, -bp.value};
}

}  // namespace gls::detail

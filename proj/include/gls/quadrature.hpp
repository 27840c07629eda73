#pragma once

#include <functional>

namespace gls {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4096;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod (G7, K15) integration on a finite interval.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b,
                              const QuadratureConfig& cfg = {});

}  // namespace gls

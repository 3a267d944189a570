#pragma once

#include <functional>
#include <initializer_list>

namespace adqs {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    unsigned max_depth = 30;
};

/// Adaptive Gauss-Kronrod integral of f over [a, b]. Throws NumericalFailure
/// when the error estimate stays above max(rel_tol * |int f|, abs_tol).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

/// Same, with the interval split at the given interior points (kinks, peaks).
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::initializer_list<double> breaks, const QuadratureOptions& opts = {});

}  // namespace adqs

#include "adqs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "adqs/errors.hpp"

namespace adqs {

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, opts.max_depth, opts.rel_tol, &error, &l1);
    if (!std::isfinite(value)) {
        throw NumericalFailure(fmt::format("quadrature on [{}, {}] produced a non-finite value", a, b));
    }
    // Boost stops at max_depth without complaint; the returned estimate is
    // the only evidence of non-convergence.
    if (error > std::max(opts.rel_tol * l1, opts.abs_tol) * 10.0) {
        throw NumericalFailure(fmt::format(
            "quadrature on [{}, {}] did not converge: error {:.3e}, |integral| {:.3e}", a, b, error, l1));
    }
    return value;
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::initializer_list<double> breaks, const QuadratureOptions& opts) {
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    std::vector<double> nodes{lo};
    for (double x : breaks) {
        if (x > lo && x < hi) nodes.push_back(x);
    }
    nodes.push_back(hi);
    std::sort(nodes.begin(), nodes.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        total += integrate(f, nodes[i], nodes[i + 1], opts);
    }
    return a <= b ? total : -total;
}

}  // namespace adqs

#include "adqs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include "adqs/errors.hpp"
#include "adqs/quadrature.hpp"

namespace adqs {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_time(double run_time) {
    if (!(run_time >= 0.0)) throw DomainError(fmt::format("run time must be >= 0, got {}", run_time));
}

void require_hamiltonian(double a) {
    if (!(a > 0.0)) {
        throw DomainError("semi-open bounds need A > 0; use the wide-open bounds when A = 0");
    }
}

void require_items(std::int64_t n) {
    if (n < 2) throw DomainError(fmt::format("list length must be >= 2, got {}", n));
}

// Exponent of the (1 + x^2) kernel inside Phi for the given regime.
double phi_exponent(double sigma, Schedule regime) {
    if (regime == Schedule::Global) {
        if (!(sigma >= 0.0)) throw DomainError(fmt::format("global regime needs sigma >= 0, got {}", sigma));
        return sigma;
    }
    if (!(sigma >= 1.0)) throw DomainError(fmt::format("local regime needs sigma >= 1, got {}", sigma));
    return sigma - 1.0;
}

double phi_kernel(double x, double exponent) {
    if (exponent == 0.0) return x;
    if (exponent == std::round(exponent) && exponent <= 20.0) {
        // Binomial expansion of (1 + t^2)^k integrated term by term.
        const int k = static_cast<int>(exponent);
        const double x2 = x * x;
        double binom = 1.0;
        double power = x;
        double sum = 0.0;
        for (int j = 0; j <= k; ++j) {
            sum += binom * power / (2.0 * j + 1.0);
            binom = binom * (k - j) / (j + 1.0);
            power *= x2;
        }
        return sum;
    }
    if (std::abs(x) <= 1.0) {
        // The integrand's nearest singularities sit at +-i, so a fixed 20-point
        // Gauss rule on [0, |x|] is already at double precision here.
        const double magnitude = boost::math::quadrature::gauss<double, 20>::integrate(
            [exponent](double t) { return std::pow(1.0 + t * t, exponent); }, 0.0, std::abs(x));
        return x < 0.0 ? -magnitude : magnitude;
    }
    const double magnitude = integrate([exponent](double t) { return std::pow(1.0 + t * t, exponent); },
                                       0.0, std::abs(x), {.rel_tol = 1e-12});
    return x < 0.0 ? -magnitude : magnitude;
}

double f_integrand(double alpha, double beta, double exponent) {
    if (beta == 0.0) return 0.0;
    const double inner = integrate(
        [alpha, exponent](double x) { return std::exp(-alpha * phi_kernel(x, exponent)) / (1.0 + x * x); },
        0.0, beta, {.rel_tol = 1e-10});
    const double one_plus = 1.0 + beta * beta;
    return 2.0 * beta * std::exp(-alpha * phi_kernel(beta, exponent)) / (one_plus * std::sqrt(one_plus)) * inner;
}

}  // namespace

std::string_view to_string(BoundName name) {
    switch (name) {
        case BoundName::SemiOpenGlobal: return "SemiOpenGlobal";
        case BoundName::SemiOpenLocal: return "SemiOpenLocal";
        case BoundName::WideOpenGlobal: return "WideOpenGlobal";
        case BoundName::WideOpenLocal: return "WideOpenLocal";
        case BoundName::RuntimeUpper: return "RuntimeUpper";
        case BoundName::RuntimeLower: return "RuntimeLower";
    }
    return "unknown";
}

BoundReport BoundReport::upper(BoundName name, double value, double observed) {
    const double margin = value - observed;
    return {name, value, observed, margin >= -1e-9, margin};
}

BoundReport BoundReport::lower(BoundName name, double value, double observed) {
    const double margin = observed - value;
    return {name, value, observed, margin >= -1e-9, margin};
}

double semi_open_global_bound(std::int64_t n, double run_time, double a, double b, double k, double rho10_abs) {
    require_items(n);
    require_positive_time(run_time);
    require_hamiltonian(a);
    const double nd = static_cast<double>(n);
    return 2.0 * rho10_abs / (run_time * std::sqrt(nd) * a) +
           2.0 * rho10_abs * (nd / run_time) * (b * k + 5.0 * a) / (a * a) +
           kPi * (nd / run_time) * (b * k + 6.0 * a) / (a * a);
}

double semi_open_local_bound(std::int64_t n, double run_time, double a, double b, double k, double rho10_abs) {
    require_items(n);
    require_positive_time(run_time);
    require_hamiltonian(a);
    const double root_n = std::sqrt(static_cast<double>(n));
    return (rho10_abs + kPi / 2.0) * std::sqrt(2.0) * kPi * b * k / (a * a) * (root_n / run_time) +
           (3.0 * rho10_abs + 2.0 * kPi) * (kPi / a) * (root_n / run_time) +
           rho10_abs * (kPi / a) / run_time;
}

double wide_open_global_bound(std::int64_t n, double run_time, double sigma, double rho10_abs) {
    require_items(n);
    require_positive_time(run_time);
    if (!(sigma >= 0.0)) throw DomainError(fmt::format("wide-open global bound needs sigma >= 0, got {}", sigma));
    return (2.0 * rho10_abs + kPi) * std::pow(static_cast<double>(n), sigma + 0.5) / run_time;
}

double wide_open_local_bound(std::int64_t n, double run_time, double sigma, double rho10_abs) {
    require_items(n);
    require_positive_time(run_time);
    if (!(sigma >= 1.0)) throw DomainError(fmt::format("wide-open local bound needs sigma >= 1, got {}", sigma));
    return (2.0 * rho10_abs + kPi) * (kPi / 2.0) * std::pow(static_cast<double>(n), sigma) / run_time;
}

double phi(double x, double sigma) {
    if (!(sigma >= 0.0)) throw DomainError(fmt::format("phi needs sigma >= 0, got {}", sigma));
    return phi_kernel(x, sigma);
}

double alpha_of(std::int64_t n, double run_time, double sigma, Schedule regime) {
    require_items(n);
    const double nd = static_cast<double>(n);
    const double root = std::sqrt(nd - 1.0);
    const double scale = regime == Schedule::Global ? root : std::atan(root);
    return run_time / (2.0 * std::pow(nd, sigma) * scale);
}

double necessity_integrand(double alpha, double beta, double sigma, Schedule regime) {
    if (!(alpha >= 0.0)) throw DomainError(fmt::format("alpha must be >= 0, got {}", alpha));
    return f_integrand(alpha, beta, phi_exponent(sigma, regime));
}

double necessity_c(const NecessityParams& p) {
    if (!(p.alpha >= 0.0)) throw DomainError(fmt::format("alpha must be >= 0, got {}", p.alpha));
    const double exponent = phi_exponent(p.sigma, p.regime);
    const double alpha = p.alpha;
    const double outer = integrate([alpha, exponent](double beta) { return f_integrand(alpha, beta, exponent); },
                                   0.0, 1.0, {.rel_tol = 1e-8});
    return outer / (2.0 * std::sqrt(2.0));
}

double necessity_c(double alpha, double sigma, Schedule regime) {
    return necessity_c(NecessityParams{alpha, sigma, regime});
}

double necessity_c_inverse(double y, double sigma, Schedule regime) {
    const double c0 = necessity_c(0.0, sigma, regime);
    if (!(y > 0.0) || y > c0) {
        throw RangeError(fmt::format("C^-1 is defined on (0, C(0)] = (0, {}], got {}", c0, y));
    }
    if (y == c0) return 0.0;

    double lo = 0.0;
    double hi = 1.0;
    while (necessity_c(hi, sigma, regime) > y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw NumericalFailure(fmt::format("could not bracket C^-1({})", y));
    }
    // C is strictly decreasing: C(lo) > y >= C(hi).
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (necessity_c(mid, sigma, regime) > y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

RuntimeSandwich runtime_bounds_for_p(std::int64_t n, double p, double sigma, Schedule regime,
                                     Openness openness, double a, double b, double k) {
    require_items(n);
    if (!(p > 0.0 && p < 1.0)) throw DomainError(fmt::format("p must lie in (0, 1), got {}", p));
    const double nd = static_cast<double>(n);
    const double miss = 1.0 - p;
    RuntimeSandwich out;

    if (openness == Openness::SemiOpen) {
        require_hamiltonian(a);
        if (regime == Schedule::Global) {
            out.t_high = kPi * nd * (b * k + 6.0 * a) / (a * a * miss);
        } else {
            out.t_high = std::sqrt(nd) / miss * (2.0 * kPi * kPi / a) * (1.0 + std::sqrt(2.0) * b * k / (4.0 * a));
        }
        return out;
    }

    if (a != 0.0) throw DomainError("wide-open bounds need A = 0");
    if (!(b > 0.0)) throw DomainError("wide-open bounds need B > 0");
    // The wide-open results are stated for B = 1; B rescales the run time.
    const double root = std::sqrt(nd - 1.0);
    double lower_scale = 0.0;
    if (regime == Schedule::Global) {
        if (!(sigma >= 0.0)) throw DomainError("wide-open global bounds need sigma >= 0");
        out.t_high = std::pow(nd, sigma + 0.5) * kPi / miss / b;
        lower_scale = 2.0 * std::pow(nd, sigma) * root / b;
    } else {
        if (!(sigma >= 1.0)) throw DomainError("wide-open local bounds need sigma >= 1");
        out.t_high = kPi * kPi / 2.0 * std::pow(nd, sigma) / miss / b;
        lower_scale = 2.0 * std::pow(nd, sigma) * std::atan(root) / b;
    }

    const double c0 = necessity_c(0.0, sigma, regime);
    if (miss > c0) {
        out.t_low = 0.0;
        out.lower_vacuous = true;
    } else {
        out.t_low = lower_scale * necessity_c_inverse(miss, sigma, regime);
    }
    return out;
}

double condition_integral(std::int64_t n, double sigma) {
    require_items(n);
    if (!(sigma >= 0.0)) throw DomainError(fmt::format("sigma must be >= 0, got {}", sigma));
    if (sigma == 0.0) return 0.0;
    const double nd = static_cast<double>(n);
    // In x = sqrt(n-1)(2s-1) the integrand z |d Gamma^2/ds| ds becomes
    // 2 sigma sqrt(n-1) n^-sigma |x| (1+x^2)^(sigma-2) dx, even in x and free of
    // the 1/sqrt(n)-wide feature at s = 1/2. Segments grow by 4x toward sqrt(n-1).
    const double root = std::sqrt(nd - 1.0);
    auto integrand = [sigma](double x) { return x * std::pow(1.0 + x * x, sigma - 2.0); };
    double total = 0.0;
    for (double a = 0.0, b = std::min(1.0, root); a < root; a = b, b = std::min(4.0 * b, root)) {
        total += integrate(integrand, a, b, {.rel_tol = 1e-12});
    }
    return 4.0 * sigma * root * std::pow(nd, -sigma) * total;
}

double zeta_min(std::int64_t n, double sigma) {
    require_items(n);
    if (!(sigma >= 0.0)) throw DomainError(fmt::format("sigma must be >= 0, got {}", sigma));
    const double exponent = 2.0 * sigma - 1.0;
    auto objective = [n, exponent](double s) { return std::pow(gap(s, n), exponent); };

    constexpr int kGrid = 4000;
    int best = 0;
    double best_value = objective(0.0);
    for (int i = 1; i <= kGrid; ++i) {
        const double v = objective(static_cast<double>(i) / kGrid);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    double lo = std::max(0, best - 1) / static_cast<double>(kGrid);
    double hi = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = objective(x2);
        }
    }
    return std::min({best_value, f1, f2});
}

double coherence_magnitude(const BlochVector& v) {
    return 0.5 * std::hypot(v.x(), v.y());
}

std::pair<BoundName, double> applicable_deviation_bound(const ModelParams& params, double run_time,
                                                        double rho10_abs) {
    params.validate();
    const std::int64_t n = params.n_items;
    if (params.coeff_a > 0.0) {
        const double k = condition_integral(n, params.sigma);
        if (params.schedule == Schedule::Global) {
            return {BoundName::SemiOpenGlobal,
                    semi_open_global_bound(n, run_time, params.coeff_a, params.coeff_b, k, rho10_abs)};
        }
        return {BoundName::SemiOpenLocal,
                semi_open_local_bound(n, run_time, params.coeff_a, params.coeff_b, k, rho10_abs)};
    }
    // Wide-open results are stated for B = 1; B only rescales the run time.
    const double effective = run_time * params.coeff_b;
    if (params.schedule == Schedule::Global) {
        return {BoundName::WideOpenGlobal, wide_open_global_bound(n, effective, params.sigma, rho10_abs)};
    }
    return {BoundName::WideOpenLocal, wide_open_local_bound(n, effective, params.sigma, rho10_abs)};
}

double observed_deviation(const Trajectory& trajectory) {
    if (trajectory.samples.empty()) return 0.0;
    const double p0 = trajectory.samples.front().p;
    double worst = 0.0;
    for (const auto& sample : trajectory.samples) worst = std::max(worst, std::abs(sample.p - p0));
    return worst;
}

BoundReport check_deviation_bound(const ModelParams& params, double run_time, const BlochVector& v0,
                                  const SimOptions& opts) {
    const auto [name, value] = applicable_deviation_bound(params, run_time, coherence_magnitude(v0));
    const Trajectory traj = evolve(params, run_time, v0, opts);
    return BoundReport::upper(name, value, observed_deviation(traj));
}

}  // namespace adqs

#include "adqs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "adqs/errors.hpp"
#include "adqs/quadrature.hpp"

namespace adqs {

namespace {

void require_items(std::int64_t n) {
    if (n < 2) throw DomainError(fmt::format("list length must be >= 2, got {}", n));
}

void require_unit(double s, const char* name) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError(fmt::format("{} must lie in [0, 1], got {}", name, s));
}

void require_sigma(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw DomainError(fmt::format("sigma must be finite and >= 0, got {}", sigma));
    }
}

// gap^2 in the (2s-1) form; never expand the polynomial, n may be ~2^24.
double gap_squared(double s, double n) {
    const double x = 2.0 * s - 1.0;
    return (1.0 + (n - 1.0) * x * x) / n;
}

}  // namespace

std::string_view to_string(Schedule schedule) {
    return schedule == Schedule::Global ? "global" : "local";
}

Schedule parse_schedule(std::string_view text) {
    if (text == "global") return Schedule::Global;
    if (text == "local") return Schedule::Local;
    throw DomainError(fmt::format("unknown schedule '{}'", text));
}

ModelParams ModelParams::from_omega(std::int64_t n_items, double omega, double sigma,
                                    Schedule schedule) {
    const Coefficients c = coefficients(omega);
    ModelParams p;
    p.n_items = n_items;
    p.sigma = sigma;
    p.coeff_a = c.a;
    p.coeff_b = c.b;
    p.schedule = schedule;
    return p;
}

double ModelParams::omega() const {
    return std::atan2(coeff_b, coeff_a) * 2.0 / std::numbers::pi;
}

void ModelParams::validate() const {
    require_items(n_items);
    require_sigma(sigma);
    if (!(coeff_a >= 0.0) || !(coeff_b >= 0.0) || !std::isfinite(coeff_a) || !std::isfinite(coeff_b)) {
        throw DomainError(fmt::format("coefficients must be finite and >= 0, got A={} B={}", coeff_a, coeff_b));
    }
    if (coeff_a == 0.0 && coeff_b == 0.0) throw DomainError("A and B must not both be zero");
}

double gap(double s, std::int64_t n) {
    require_items(n);
    require_unit(s, "s");
    return std::sqrt(gap_squared(s, static_cast<double>(n)));
}

Spectrum spectrum(double s, std::int64_t n) {
    const double delta = gap(s, n);
    const double nd = static_cast<double>(n);
    Spectrum out;
    out.gap = delta;
    out.e0 = -0.5 - 0.5 * delta;
    out.e1 = -0.5 + 0.5 * delta;
    out.d_helper = -1.0 + 2.0 * s * (nd - 1.0) / nd;
    return out;
}

BlochVector ground_bloch(double s, std::int64_t n) {
    const double delta = gap(s, n);
    const double nd = static_cast<double>(n);
    return BlochVector(2.0 * s * std::sqrt(nd - 1.0) / nd, 0.0, 1.0 - 2.0 * s * (nd - 1.0) / nd) / delta;
}

double z_coupling(double s, std::int64_t n) {
    require_items(n);
    require_unit(s, "s");
    const double nd = static_cast<double>(n);
    const double x = 2.0 * s - 1.0;
    return std::sqrt(nd - 1.0) / (1.0 + (nd - 1.0) * x * x);
}

double decoherence_gamma(double s, std::int64_t n, double sigma) {
    require_sigma(sigma);
    if (sigma == 0.0) {
        require_items(n);
        require_unit(s, "s");
        return 1.0;
    }
    return std::pow(gap(s, n), sigma);
}

Eigen::Matrix2d hamiltonian_matrix(double s, std::int64_t n) {
    require_items(n);
    require_unit(s, "s");
    const double nd = static_cast<double>(n);
    const double off = -s * std::sqrt(nd - 1.0) / nd;
    Eigen::Matrix2d m;
    m << s * (nd - 1.0) / nd - 1.0, off,
         off, -s * (nd - 1.0) / nd;
    return m;
}

Eigen::Vector2d ground_eigenvector(double s, std::int64_t n) {
    const Spectrum sp = spectrum(s, n);
    const double nd = static_cast<double>(n);
    const double delta = sp.gap;
    const double d = sp.d_helper;
    const double off = s * std::sqrt(nd - 1.0) / nd;
    // delta - d cancels catastrophically when d ~ delta (s -> 1, large n);
    // delta^2 - d^2 = 4 s^2 (n-1)/n^2 gives a stable form.
    const double delta_minus_d =
        d > 0.0 ? 4.0 * off * off / (delta + d) : delta - d;
    const double norm = std::sqrt(2.0) / std::sqrt(delta * delta_minus_d);
    return Eigen::Vector2d(0.5 * delta_minus_d * norm, off * norm);
}

Eigen::Vector2d excited_eigenvector(double s, std::int64_t n) {
    const Eigen::Vector2d g = ground_eigenvector(s, n);
    return Eigen::Vector2d(g(1), -g(0));
}

double schedule_norm(std::int64_t n) {
    require_items(n);
    const double root = std::sqrt(static_cast<double>(n) - 1.0);
    return static_cast<double>(n) * std::atan(root) / root;
}

double local_schedule_inverse(double r, std::int64_t n) {
    require_items(n);
    require_unit(r, "r");
    const double root = std::sqrt(static_cast<double>(n) - 1.0);
    const double top = std::atan(root);
    return (std::atan(root * (2.0 * r - 1.0)) + top) / (2.0 * top);
}

double local_schedule_inverse_derivative(double r, std::int64_t n) {
    require_items(n);
    require_unit(r, "r");
    return 1.0 / (schedule_norm(n) * gap_squared(r, static_cast<double>(n)));
}

double local_schedule(double s, std::int64_t n) {
    require_items(n);
    require_unit(s, "s");
    const double root = std::sqrt(static_cast<double>(n) - 1.0);
    const double r = 0.5 + std::tan((2.0 * s - 1.0) * std::atan(root)) / (2.0 * root);
    // tan rounding can leave r a few ulps outside [0, 1] at the end points.
    return std::clamp(r, 0.0, 1.0);
}

Coefficients coefficients(double omega) {
    require_unit(omega, "omega");
    if (omega == 0.0) return {1.0, 0.0};
    if (omega == 1.0) return {0.0, 1.0};
    const double angle = omega * std::numbers::pi / 2.0;
    return {std::cos(angle), std::sin(angle)};
}

double quadrature_q(double s, std::int64_t n, double sigma, Schedule schedule) {
    require_items(n);
    require_unit(s, "s");
    require_sigma(sigma);
    const double nd = static_cast<double>(n);
    if (schedule == Schedule::Global) {
        if (sigma == 0.0) return s;
        auto integrand = [nd, sigma](double x) { return std::pow(gap_squared(x, nd), sigma); };
        return integrate_split(integrand, 0.0, s, {0.5});
    }
    auto integrand = [nd, sigma](double x) { return std::pow(gap_squared(x, nd), sigma - 1.0); };
    return integrate_split(integrand, 0.0, s, {0.5}) / schedule_norm(n);
}

double quadrature_r(double s, std::int64_t n) {
    require_items(n);
    require_unit(s, "s");
    const double nd = static_cast<double>(n);
    auto integrand = [nd](double x) { return std::sqrt(gap_squared(x, nd)); };
    return integrate_split(integrand, 0.0, s, {0.5});
}

double kappa(double x, std::int64_t n) {
    require_items(n);
    return 0.5 + x / (2.0 * std::sqrt(static_cast<double>(n) - 1.0));
}

}  // namespace adqs

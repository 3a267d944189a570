#include "adqs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "adqs/errors.hpp"
#include "adqs/integrator.hpp"

namespace adqs {

void SimOptions::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw DomainError(fmt::format("tolerances must be positive, got rel={} abs={}", rel_tol, abs_tol));
    }
    if (sample_count < 2) throw DomainError(fmt::format("sample_count must be >= 2, got {}", sample_count));
    if (max_steps < 1) throw DomainError("max_steps must be positive");
    if (!(step_ceiling_factor > 0.0)) throw DomainError("step_ceiling_factor must be positive");
}

BlochField::BlochField(const ModelParams& params, double run_time, LocalForm form)
    : params_(params),
      run_time_(run_time),
      in_r_(params.schedule == Schedule::Local && form == LocalForm::Reparametrized),
      n_(static_cast<double>(params.n_items)),
      root_(std::sqrt(static_cast<double>(params.n_items) - 1.0)),
      atan_root_(std::atan(std::sqrt(static_cast<double>(params.n_items) - 1.0))),
      norm_l_(0.0) {
    params_.validate();
    if (!(run_time >= 0.0) || !std::isfinite(run_time)) {
        throw DomainError(fmt::format("run time must be finite and >= 0, got {}", run_time));
    }
    norm_l_ = schedule_norm(params.n_items);
    const double twice = 2.0 * params.sigma;
    if (twice == std::round(twice) && twice <= 8.0) integer_power_ = static_cast<int>(twice);
}

double BlochField::variable_of(double s) const {
    if (params_.schedule == Schedule::Local && in_r_) return local_schedule(s, params_.n_items);
    return s;
}

BlochVector BlochField::operator()(double u, const BlochVector& v) const {
    double x = u;
    if (params_.schedule == Schedule::Local && !in_r_) {
        x = std::clamp(0.5 + std::tan((2.0 * u - 1.0) * atan_root_) / (2.0 * root_), 0.0, 1.0);
    }
    const double c = 2.0 * x - 1.0;
    const double gap2 = (1.0 + (n_ - 1.0) * c * c) / n_;
    const double delta = std::sqrt(gap2);
    const BlochVector q = BlochVector(2.0 * x * root_ / n_, 0.0, 1.0 - 2.0 * x * (n_ - 1.0) / n_) / delta;

    double gamma2;
    if (integer_power_ >= 0) {
        gamma2 = 1.0;
        for (int i = 0; i < integer_power_; ++i) gamma2 *= delta;
    } else {
        gamma2 = std::pow(gap2, params_.sigma);
    }

    BlochVector out = run_time_ * (params_.coeff_a * delta * v.cross(q) -
                                   decoherence_sign_ * params_.coeff_b * gamma2 * (v - q * q.dot(v)));
    if (in_r_) out /= norm_l_ * gap2;
    return out;
}

double success_probability(const BlochVector& v, double s, std::int64_t n) {
    const double p = 0.5 * (1.0 + v.dot(ground_bloch(s, n)));
    if (p < 0.0 && p >= -1e-9) return 0.0;
    if (p > 1.0 && p <= 1.0 + 1e-9) return 1.0;
    return p;
}

namespace {

void require_start(const BlochVector& v0) {
    if (!(v0.norm() <= 1.0 + 1e-12)) {
        throw DomainError(fmt::format("initial Bloch vector has norm {} > 1", v0.norm()));
    }
}

std::vector<double> sample_grid(int count) {
    std::vector<double> s(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) s[static_cast<std::size_t>(k)] = static_cast<double>(k) / (count - 1);
    s.back() = 1.0;
    return s;
}

double hamiltonian_parameter(const ModelParams& params, double s) {
    return params.schedule == Schedule::Local ? local_schedule(s, params.n_items) : s;
}

TrajectorySample make_sample(const ModelParams& params, double s, const BlochVector& v) {
    TrajectorySample out;
    out.s = s;
    out.v = v;
    out.p = success_probability(v, hamiltonian_parameter(params, s), params.n_items);
    out.y = 2.0 * out.p - 1.0;
    return out;
}

StepControl step_control(const BlochField& field, const SimOptions& opts) {
    StepControl ctl;
    ctl.rel_tol = opts.rel_tol;
    ctl.abs_tol = opts.abs_tol;
    ctl.max_steps = opts.max_steps;
    ctl.initial_step = 1e-4 / (1.0 + field.run_time());
    ctl.max_step = opts.step_ceiling_factor / (1.0 + std::sqrt(static_cast<double>(field.params().n_items)));
    return ctl;
}

}  // namespace

Trajectory evolve_field(const BlochField& field, const BlochVector& v0, const SimOptions& opts) {
    opts.validate();
    require_start(v0);
    const ModelParams& params = field.params();

    const std::vector<double> s_grid = sample_grid(opts.sample_count);
    std::vector<double> u_grid(s_grid.size());
    std::transform(s_grid.begin(), s_grid.end(), u_grid.begin(),
                   [&](double s) { return field.variable_of(s); });

    Trajectory traj;
    traj.params = params;
    traj.run_time = field.run_time();
    traj.samples.resize(s_grid.size());

    BlochVector v = v0;
    integrate_dopri5(field, v, 0.0, 1.0, step_control(field, opts), std::span<const double>(u_grid),
                     [&](std::size_t i, double, const BlochVector& state) {
                         traj.samples[i] = make_sample(params, s_grid[i], state);
                     });
    return traj;
}

Trajectory evolve(const ModelParams& params, double run_time, const BlochVector& v0,
                  const SimOptions& opts) {
    return evolve_field(BlochField(params, run_time, opts.local_form), v0, opts);
}

BlochVector evolve_final(const ModelParams& params, double run_time, const BlochVector& v0,
                         const SimOptions& opts) {
    opts.validate();
    require_start(v0);
    const BlochField field(params, run_time, opts.local_form);
    BlochVector v = v0;
    integrate_dopri5(field, v, 0.0, 1.0, step_control(field, opts), std::span<const double>{},
                     [](std::size_t, double, const BlochVector&) {});
    return v;
}

double final_success_probability(const ModelParams& params, double run_time, const SimOptions& opts) {
    const BlochVector v = evolve_final(params, run_time, BlochVector::UnitZ(), opts);
    return success_probability(v, 1.0, params.n_items);
}

Trajectory euler_polygon(const ModelParams& params, double run_time, const BlochVector& v0,
                         double step, int sample_count) {
    require_start(v0);
    if (!(step > 0.0 && step <= 1.0)) throw DomainError(fmt::format("step must lie in (0, 1], got {}", step));
    if (sample_count < 2) throw DomainError("sample_count must be >= 2");
    if (params.coeff_b > 0.0 && step * run_time > 1.0 + 1e-12) {
        throw DomainError(fmt::format("Euler step {} violates the stability bound 1/T = {}", step,
                                      1.0 / run_time));
    }
    const BlochField field(params, run_time, LocalForm::Reparametrized);
    const auto steps = static_cast<std::int64_t>(std::llround(1.0 / step));
    const double ds = 1.0 / static_cast<double>(steps);

    const std::vector<double> s_grid = sample_grid(sample_count);
    Trajectory traj;
    traj.params = params;
    traj.run_time = run_time;
    traj.samples.resize(s_grid.size());

    std::size_t next = 0;
    BlochVector v = v0;
    for (std::int64_t k = 0; k < steps && next < s_grid.size(); ++k) {
        const double u0 = static_cast<double>(k) * ds;
        const double u1 = k + 1 == steps ? 1.0 : static_cast<double>(k + 1) * ds;
        const BlochVector v_next = v + ds * field(u0, v);
        while (next < s_grid.size()) {
            const double u = field.variable_of(s_grid[next]);
            if (u > u1) break;
            const double w = (u - u0) / (u1 - u0);
            traj.samples[next] = make_sample(params, s_grid[next], v + w * (v_next - v));
            ++next;
        }
        v = v_next;
    }
    return traj;
}

}  // namespace adqs

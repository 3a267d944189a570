#pragma once

// Embedded Dormand-Prince 5(4) integrator with PI step control and the
// fourth-order continuous extension for dense output. Works on any Eigen
// dense state (fixed-size Bloch vectors or complex density matrices).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>

#include <fmt/format.h>

#include "adqs/errors.hpp"

namespace adqs {

struct StepControl {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    std::int64_t max_steps = 500'000'000;
    double initial_step = 1e-4;
    double max_step = 1.0;
};

struct IntegrationStats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
    std::int64_t rhs_evaluations = 0;
};

namespace detail {

template <class State>
double scaled_rms(const State& err, const State& y0, const State& y1, double abs_tol, double rel_tol) {
    const auto scale = abs_tol + rel_tol * y0.cwiseAbs().array().max(y1.cwiseAbs().array());
    return std::sqrt((err.cwiseAbs().array() / scale).square().mean());
}

}  // namespace detail

/// Integrates dy/dt = rhs(t, y) from t0 to t1 (t1 > t0), overwriting y with
/// the final state. For every entry of `samples` (ascending, inside [t0, t1])
/// `sink(index, t, state)` is called once with the dense-output state.
template <class State, class Rhs, class Sink>
IntegrationStats integrate_dopri5(const Rhs& rhs, State& y, double t0, double t1,
                                  const StepControl& ctl, std::span<const double> samples,
                                  Sink&& sink) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                     a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    // PI controller constants (Hairer, Norsett & Wanner).
    constexpr double beta = 0.04;
    constexpr double expo1 = 0.2 - beta * 0.75;
    constexpr double safe = 0.9;
    constexpr double fac_min = 0.2;
    constexpr double fac_max = 10.0;

    IntegrationStats stats;
    std::size_t next_sample = 0;
    auto emit_until = [&](double t_limit, auto&& state_at) {
        while (next_sample < samples.size() && samples[next_sample] <= t_limit) {
            sink(next_sample, samples[next_sample], state_at(samples[next_sample]));
            ++next_sample;
        }
    };

    if (!(t1 > t0)) {
        emit_until(t1, [&](double) -> const State& { return y; });
        return stats;
    }
    emit_until(t0, [&](double) -> const State& { return y; });

    double t = t0;
    double h = std::min({ctl.initial_step, ctl.max_step, t1 - t0});
    double fac_old = 1e-4;
    bool last_rejected = false;

    State k1 = rhs(t, y);
    ++stats.rhs_evaluations;

    while (t < t1) {
        if (stats.accepted + stats.rejected >= ctl.max_steps) {
            throw IntegrationFailure(
                fmt::format("step budget of {} exhausted at {}", ctl.max_steps, t), t);
        }
        bool last = false;
        if (t + h >= t1 || t + 1.01 * h >= t1) {
            h = t1 - t;
            last = true;
        }
        if (!(h > std::abs(t) * 1e-15)) {
            throw IntegrationFailure(fmt::format("step size underflow at {}", t), t);
        }

        const State k2 = rhs(t + c2 * h, State(y + h * (a21 * k1)));
        const State k3 = rhs(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
        const State k4 = rhs(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
        const State k5 = rhs(t + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        const double t_new = last ? t1 : t + h;
        const State k6 = rhs(t_new, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        const State y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const State k7 = rhs(t_new, y_new);
        stats.rhs_evaluations += 6;

        const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err_norm = detail::scaled_rms(err, y, y_new, ctl.abs_tol, ctl.rel_tol);
        if (!std::isfinite(err_norm)) {
            throw IntegrationFailure(fmt::format("non-finite error estimate at {}", t), t);
        }

        const double fac11 = std::pow(std::max(err_norm, 1e-300), expo1);
        if (err_norm <= 1.0) {
            double fac = fac11 / std::pow(fac_old, beta);
            fac = std::clamp(fac / safe, 1.0 / fac_max, 1.0 / fac_min);
            fac_old = std::max(err_norm, 1e-4);
            double h_new = std::min(h / fac, ctl.max_step);
            if (last_rejected) h_new = std::min(h_new, h);

            if (next_sample < samples.size() && samples[next_sample] <= t_new) {
                const State ydiff = y_new - y;
                const State bspl = h * k1 - ydiff;
                const State r4 = ydiff - h * k7 - bspl;
                const State r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                const double t_old = t;
                emit_until(t_new, [&](double ts) -> State {
                    if (ts >= t_new) return y_new;
                    const double theta = (ts - t_old) / h;
                    const double theta1 = 1.0 - theta;
                    return y + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
                });
            }

            ++stats.accepted;
            last_rejected = false;
            y = y_new;
            k1 = k7;
            t = t_new;
            h = h_new;
        } else {
            ++stats.rejected;
            last_rejected = true;
            h /= std::min(1.0 / fac_min, fac11 / safe);
        }
    }
    return stats;
}

}  // namespace adqs

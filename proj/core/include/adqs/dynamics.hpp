#pragma once

// Time evolution of the reduced two-level state. The Bloch vector lives in the
// fixed {|psi>, |psi_bar>} basis; instantaneous-eigenbasis quantities are
// recovered through ground_bloch().
//
//   dv/ds = T A gap (v x q) - T B Gamma^2 (v - q (q.v))
//
// evaluated at f(s) for the local schedule. The local schedule may also be
// integrated in r = f(s), where the right-hand side picks up d f^-1 / dr.

#include <cstdint>
#include <vector>

#include "adqs/model.hpp"

namespace adqs {

enum class LocalForm {
    SchedulePath,   // integrate in s with H(f(s))
    Reparametrized  // integrate in r = f(s) with the d f^-1/dr factor
};

struct SimOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    std::int64_t max_steps = 500'000'000;
    int sample_count = 1001;
    /// Step ceiling h <= factor / (1 + sqrt(n)): the gap minimum has width
    /// ~1/sqrt(n), and a start on q(0) gives a zero error estimate that
    /// would otherwise let the step grow past it.
    double step_ceiling_factor = 0.05;
    LocalForm local_form = LocalForm::Reparametrized;

    void validate() const;
};

struct TrajectorySample {
    double s = 0.0;
    BlochVector v = BlochVector::Zero();
    double p = 0.0;  // ground-state population at s
    double y = 0.0;  // 2p - 1
};

struct Trajectory {
    ModelParams params;
    double run_time = 0.0;
    std::vector<TrajectorySample> samples;

    const TrajectorySample& final_sample() const { return samples.back(); }
};

/// Right-hand side of the Bloch equation in the chosen integration variable u
/// (u = s for the global schedule and the SchedulePath form, u = r otherwise).
class BlochField {
public:
    BlochField(const ModelParams& params, double run_time, LocalForm form = LocalForm::Reparametrized);

    BlochVector operator()(double u, const BlochVector& v) const;

    /// Maps a schedule parameter s to the integration variable u.
    double variable_of(double s) const;

    /// Multiplies the decoherence term by -1. Exists only for mutation tests
    /// of the validation suites.
    void flip_decoherence_sign() { decoherence_sign_ = -decoherence_sign_; }

    const ModelParams& params() const { return params_; }
    double run_time() const { return run_time_; }
    bool in_r() const { return in_r_; }

private:
    ModelParams params_;
    double run_time_;
    bool in_r_;
    double n_;
    double root_;       // sqrt(n - 1)
    double atan_root_;  // arctan(sqrt(n - 1))
    double norm_l_;
    double decoherence_sign_ = 1.0;
    int integer_power_ = -1;  // 2 sigma when it is a small integer, else -1
};

/// Success probability (1 + v.q(s))/2, clamped to [0, 1] within 1e-9.
double success_probability(const BlochVector& v, double s, std::int64_t n);

/// Integrates from s = 0 to s = 1 and samples at opts.sample_count equally
/// spaced s values. Throws IntegrationFailure on step exhaustion.
Trajectory evolve(const ModelParams& params, double run_time,
                  const BlochVector& v0 = BlochVector::UnitZ(), const SimOptions& opts = {});

/// Same as evolve but with an explicit (possibly mutated) field.
Trajectory evolve_field(const BlochField& field, const BlochVector& v0, const SimOptions& opts);

/// Final Bloch vector at s = 1 without recording samples.
BlochVector evolve_final(const ModelParams& params, double run_time,
                         const BlochVector& v0 = BlochVector::UnitZ(), const SimOptions& opts = {});

/// p at s = 1 for the ground-state start.
double final_success_probability(const ModelParams& params, double run_time,
                                 const SimOptions& opts = {});

/// First-order Cauchy-Euler polygon with M = round(1/step) uniform steps in the
/// integration variable; samples are the linear interpolation of the vertices.
/// Throws DomainError when B > 0 and step > 1/run_time.
Trajectory euler_polygon(const ModelParams& params, double run_time, const BlochVector& v0,
                         double step, int sample_count = 1001);

}  // namespace adqs

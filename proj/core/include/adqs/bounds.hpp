#pragma once

// Analytical run-time and deviation bounds for the search under eigenbasis
// decoherence, plus the necessity functional C(alpha) and its inverse.
//
// Deviation bounds bound |rho_00(0) - rho_00(s)| in the instantaneous
// eigenbasis; rho10_abs is |rho_10(0)|, zero for a ground-state start.

#include <cstdint>
#include <optional>
#include <string_view>

#include "adqs/dynamics.hpp"
#include "adqs/model.hpp"

namespace adqs {

enum class BoundName { SemiOpenGlobal, SemiOpenLocal, WideOpenGlobal, WideOpenLocal, RuntimeUpper, RuntimeLower };
enum class Openness { WideOpen, SemiOpen };

std::string_view to_string(BoundName name);

struct BoundReport {
    BoundName name = BoundName::SemiOpenGlobal;
    double value = 0.0;
    double observed = 0.0;
    bool holds = false;
    double margin = 0.0;

    /// Upper-type bound: margin = value - observed.
    static BoundReport upper(BoundName name, double value, double observed);
    /// Lower-type bound: margin = observed - value, so a positive margin means satisfied.
    static BoundReport lower(BoundName name, double value, double observed);
};

struct NecessityParams {
    double alpha = 0.0;
    double sigma = 1.0;
    Schedule regime = Schedule::Global;
};

double semi_open_global_bound(std::int64_t n, double run_time, double a, double b, double k, double rho10_abs);
double semi_open_local_bound(std::int64_t n, double run_time, double a, double b, double k, double rho10_abs);
double wide_open_global_bound(std::int64_t n, double run_time, double sigma, double rho10_abs);
double wide_open_local_bound(std::int64_t n, double run_time, double sigma, double rho10_abs);

/// Phi(x) = int_0^x (1 + t^2)^sigma dt; odd in x.
double phi(double x, double sigma);

/// alpha = T / (2 n^sigma sqrt(n-1)) (Global) or T / (2 n^sigma arctan sqrt(n-1)) (Local).
double alpha_of(std::int64_t n, double run_time, double sigma, Schedule regime);

/// F(alpha, beta): the integrand of the necessity functional.
double necessity_integrand(double alpha, double beta, double sigma, Schedule regime);

/// C(alpha) = (1 / 2 sqrt 2) int_0^1 F(alpha, beta) d beta. The local regime
/// uses Phi with exponent sigma - 1.
double necessity_c(const NecessityParams& p);
double necessity_c(double alpha, double sigma, Schedule regime);

/// alpha with C(alpha) = y, by bisection. Throws RangeError unless 0 < y <= C(0).
double necessity_c_inverse(double y, double sigma, Schedule regime);

struct RuntimeSandwich {
    std::optional<double> t_low;  // none for the semi-open case
    double t_high = 0.0;
    bool lower_vacuous = false;   // 1 - p > C(0): reported as t_low = 0
};

/// Upper and (wide-open only) lower bounds on the run time reaching p.
/// `k` is the condition-integral constant used by the semi-open bounds.
RuntimeSandwich runtime_bounds_for_p(std::int64_t n, double p, double sigma, Schedule regime,
                                     Openness openness, double a = 0.0, double b = 1.0, double k = 0.0);

/// int_0^1 Z(s) |d Gamma^2 / ds| ds for Gamma = gap^sigma, by quadrature.
double condition_integral(std::int64_t n, double sigma);

/// min_s Gamma^2 / gap = gap^(2 sigma - 1) over [0, 1] (grid + golden-section polish).
double zeta_min(std::int64_t n, double sigma);

/// |rho_10| in the eigenbasis at s = 0 for a Bloch vector: half its component
/// transverse to q(0).
double coherence_magnitude(const BlochVector& v);

/// The deviation bound applicable to `params` (semi-open when A > 0, else
/// wide-open), as (name, value). K is condition_integral(n, sigma).
std::pair<BoundName, double> applicable_deviation_bound(const ModelParams& params, double run_time,
                                                        double rho10_abs);

/// max_k |p(s_k) - p(0)| over the trajectory samples.
double observed_deviation(const Trajectory& trajectory);

/// Simulates from v0 and compares the observed deviation with the applicable bound.
BoundReport check_deviation_bound(const ModelParams& params, double run_time, const BlochVector& v0,
                                  const SimOptions& opts = {});

}  // namespace adqs

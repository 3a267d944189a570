#pragma once

// Brute-force density-matrix simulation in the full N-dimensional space, used
// to check the two-level reduction. Small N only.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "adqs/dynamics.hpp"
#include "adqs/model.hpp"

namespace adqs {

inline constexpr std::int64_t kMaxOracleItems = 32;

struct FullState {
    Eigen::MatrixXcd rho;
    std::int64_t marked_index = 0;
};

struct FullSample {
    double s = 0.0;
    double marked_population = 0.0;  // <mu|rho|mu>
    double leakage = 0.0;            // weight outside span{|psi>, |mu>}
    double trace_error = 0.0;        // |tr rho - 1|
    double hermiticity_error = 0.0;  // max |rho - rho^dagger|
    double min_eigenvalue = 0.0;
};

struct FullEvolution {
    FullState final_state;
    std::vector<FullSample> samples;

    /// <mu|rho(1)|mu>, the success probability.
    double success_probability() const { return samples.back().marked_population; }
};

/// Uniform superposition |psi><psi| in the computational basis.
FullState initial_full_state(std::int64_t n, std::int64_t marked_index = 0);

/// Integrates d rho/ds = -i T A [H, rho] - T B [W, [W, rho]] with H the full
/// search Hamiltonian and W = -Gamma/2 P0 + Gamma/2 P1 (zero on the complement
/// of span{|psi>, |mu>}). The local schedule is integrated in s along H(f(s)).
FullEvolution evolve_full(const ModelParams& params, double run_time, const SimOptions& opts = {},
                          std::int64_t marked_index = 0);

/// Trace of rho projected onto the orthogonal complement of span{|psi>, |mu>}.
double reduction_residual(const FullState& state);

}  // namespace adqs

#include <cmath>

#include "adqs/dynamics.hpp"
#include "adqs/errors.hpp"
#include "adqs/oracle.hpp"
#include "doctest.h"

using namespace adqs;
using doctest::Approx;

TEST_SUITE("oracle") {

TEST_CASE("initial state lies in the two-level subspace") {
    for (std::int64_t n : {2, 5, 32}) {
        const FullState state = initial_full_state(n);
        CHECK(std::abs(reduction_residual(state)) <= 1e-15);
        CHECK(std::abs(state.rho.trace() - 1.0) <= 1e-14);
    }
}

TEST_CASE("weight placed on the complement is measured exactly") {
    const std::int64_t n = 6;
    FullState state = initial_full_state(n, 2);
    // |c> = (|0> - |1>)/sqrt 2 is orthogonal to both |psi> and |mu> = |2>.
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
    c(0) = 1.0 / std::sqrt(2.0);
    c(1) = -1.0 / std::sqrt(2.0);
    const double eps = 0.125;
    state.rho = (1.0 - eps) * state.rho + eps * c * c.adjoint();
    CHECK(reduction_residual(state) == Approx(eps).epsilon(1e-12));
}

TEST_CASE("full-space evolution preserves the density-matrix properties") {
    SimOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    opts.sample_count = 33;
    for (const double omega : {0.0, 0.5, 1.0}) {
        const FullEvolution evo = evolve_full(ModelParams::from_omega(8, omega, 1.0, Schedule::Global), 25.0, opts);
        for (const auto& s : evo.samples) {
            CHECK(s.trace_error <= 1e-10);
            CHECK(s.hermiticity_error <= 1e-10);
            CHECK(s.min_eigenvalue >= -1e-9);
            CHECK(std::abs(s.leakage) <= 1e-10);
        }
        CHECK(std::abs(reduction_residual(evo.final_state)) <= 1e-10);
    }
}

TEST_CASE("marked population matches the reduced model") {
    SimOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    opts.sample_count = 9;
    for (std::int64_t n : {2, 4, 8}) {
        for (const double omega : {0.0, 0.5, 1.0}) {
            for (const auto schedule : {Schedule::Global, Schedule::Local}) {
                const ModelParams params = ModelParams::from_omega(n, omega, 1.0, schedule);
                const double reduced = final_success_probability(params, 10.0, opts);
                const double full = evolve_full(params, 10.0, opts, n - 1).success_probability();
                CHECK(std::abs(full - reduced) <= 1e-6);
            }
        }
    }
}

TEST_CASE("size limits") {
    CHECK_THROWS_AS(initial_full_state(kMaxOracleItems + 1), DomainError);
    CHECK_THROWS_AS(initial_full_state(4, 4), DomainError);
    CHECK_THROWS_AS(evolve_full(ModelParams::from_omega(64, 1.0, 1.0, Schedule::Global), 1.0), DomainError);
}

}  // TEST_SUITE

#include <cmath>

#include "adqs/dynamics.hpp"
#include "adqs/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adqs;
using doctest::Approx;

namespace {

ModelParams instance(std::int64_t n, double omega, double sigma, Schedule schedule = Schedule::Global) {
    return ModelParams::from_omega(n, omega, sigma, schedule);
}

oracle::BlochProblem problem_of(const ModelParams& p, double run_time) {
    return {p.n_items, run_time, p.coeff_a, p.coeff_b, p.sigma, p.schedule == Schedule::Local};
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("zero run time leaves the state unchanged") {
    const BlochVector v0(0.3, -0.2, 0.5);
    for (const auto schedule : {Schedule::Global, Schedule::Local}) {
        const Trajectory traj = evolve(instance(16, 0.5, 1.0, schedule), 0.0, v0);
        REQUIRE(traj.samples.size() == 1001);
        for (const auto& sample : traj.samples) CHECK((sample.v - v0).norm() == 0.0);
    }
}

TEST_CASE("trajectory sampling contract") {
    SimOptions opts;
    opts.sample_count = 17;
    const Trajectory traj = evolve(instance(32, 0.3, 1.0), 40.0, BlochVector::UnitZ(), opts);
    REQUIRE(traj.samples.size() == 17);
    CHECK(traj.samples.front().s == 0.0);
    CHECK(traj.samples.back().s == 1.0);
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const auto& sample = traj.samples[k];
        if (k > 0) CHECK(sample.s > traj.samples[k - 1].s);
        CHECK(sample.v.norm() <= 1.0 + 1e-9);
        CHECK(sample.p >= -1e-9);
        CHECK(sample.p <= 1.0 + 1e-9);
        CHECK(sample.y == Approx(2.0 * sample.p - 1.0).epsilon(1e-15));
    }
    CHECK(traj.samples.front().p == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("wide-open motion stays in the x-z plane") {
    for (const auto schedule : {Schedule::Global, Schedule::Local}) {
        const Trajectory traj = evolve(instance(64, 1.0, 1.0, schedule), 300.0);
        for (const auto& sample : traj.samples) CHECK(std::abs(sample.v.y()) <= 1e-12);
    }
}

TEST_CASE("closed evolution preserves the Bloch norm") {
    const BlochVector v0 = BlochVector(0.2, 0.5, -0.3);
    SimOptions tight;
    tight.rel_tol = 1e-10;
    tight.abs_tol = 1e-12;
    for (const auto schedule : {Schedule::Global, Schedule::Local}) {
        const Trajectory traj = evolve(instance(128, 0.0, 1.0, schedule), 500.0, v0, tight);
        for (const auto& sample : traj.samples) CHECK(std::abs(sample.v.norm() - v0.norm()) <= 1e-7);
    }
}

TEST_CASE("agrees with an independent RK4 integration") {
    SimOptions tight;
    tight.rel_tol = 1e-11;
    tight.abs_tol = 1e-13;
    struct Case {
        std::int64_t n;
        double omega, sigma, run_time;
        Schedule schedule;
    };
    const Case cases[] = {{16, 0.0, 1.0, 64.0, Schedule::Global},  {16, 1.0, 1.0, 200.0, Schedule::Global},
                          {64, 0.5, 2.0, 150.0, Schedule::Global}, {64, 0.5, 0.5, 80.0, Schedule::Local},
                          {32, 1.0, 1.5, 90.0, Schedule::Local},   {8, 0.2, 0.0, 30.0, Schedule::Local}};
    for (const auto& c : cases) {
        CAPTURE(c.n);
        CAPTURE(c.omega);
        CAPTURE(c.sigma);
        const ModelParams params = instance(c.n, c.omega, c.sigma, c.schedule);
        const BlochVector v0(0.1, 0.2, 0.9);
        const auto problem = problem_of(params, c.run_time);
        const oracle::Vec3 reference = oracle::rk4_final(problem, v0, 200000);
        const BlochVector got = evolve_final(params, c.run_time, v0, tight);
        CHECK((got - reference).norm() <= 1e-7);
        for (const auto form : {LocalForm::SchedulePath, LocalForm::Reparametrized}) {
            SimOptions opts = tight;
            opts.local_form = form;
            CHECK((evolve_final(params, c.run_time, v0, opts) - reference).norm() <= 1e-7);
        }
    }
}

TEST_CASE("both local-schedule parametrizations give the same success probability") {
    for (const double omega : {0.0, 0.5, 1.0}) {
        const ModelParams params = instance(256, omega, 1.0, Schedule::Local);
        SimOptions path;
        path.rel_tol = 1e-11;
        path.abs_tol = 1e-13;
        path.local_form = LocalForm::SchedulePath;
        SimOptions reparam = path;
        reparam.local_form = LocalForm::Reparametrized;
        const double p_path = final_success_probability(params, 400.0, path);
        const double p_r = final_success_probability(params, 400.0, reparam);
        CHECK(std::abs(p_path - p_r) <= 1e-7);
    }
}

TEST_CASE("success probability") {
    for (double s : {0.0, 0.4, 1.0}) {
        const BlochVector q = ground_bloch(s, 10);
        CHECK(success_probability(q, s, 10) == Approx(1.0).epsilon(1e-15));
        CHECK(success_probability(-q, s, 10) == Approx(0.0));
        const double cos_theta = ground_bloch(0.0, 10).dot(q);
        CHECK(success_probability(ground_bloch(0.0, 10), s, 10) == Approx((1.0 + cos_theta) / 2.0).epsilon(1e-15));
    }
}

TEST_CASE("closed case matches the Euler polygon") {
    const ModelParams params = instance(16, 0.0, 1.0);
    const double adaptive = evolve(params, 64.0, ground_bloch(0.0, 16)).final_sample().p;
    const double euler = euler_polygon(params, 64.0, ground_bloch(0.0, 16), 1e-6).final_sample().p;
    CHECK(std::abs(adaptive - euler) <= 1e-4);
}

TEST_CASE("Euler polygon") {
    SUBCASE("zero run time is constant") {
        const BlochVector v0(0.0, 0.6, 0.0);
        const Trajectory traj = euler_polygon(instance(8, 0.5, 1.0), 0.0, v0, 0.01);
        for (const auto& sample : traj.samples) CHECK(sample.v == v0);
    }
    SUBCASE("wide-open iterates stay in the unit ball") {
        const Trajectory traj = euler_polygon(instance(64, 1.0, 1.0), 100.0, BlochVector::UnitZ(), 0.01, 101);
        for (const auto& sample : traj.samples) CHECK(sample.v.norm() <= 1.0 + 1e-15);
    }
    SUBCASE("stability bound is enforced when decoherence is on") {
        CHECK_THROWS_AS(euler_polygon(instance(8, 1.0, 1.0), 100.0, BlochVector::UnitZ(), 0.05), DomainError);
        CHECK_NOTHROW(euler_polygon(instance(8, 0.0, 1.0), 100.0, BlochVector::UnitZ(), 0.05));
    }
    SUBCASE("first-order convergence") {
        for (const auto schedule : {Schedule::Global, Schedule::Local}) {
            const ModelParams params = instance(8, 1.0, 1.0, schedule);
            SimOptions tight;
            tight.rel_tol = 1e-12;
            tight.abs_tol = 1e-14;
            const BlochVector exact = evolve(params, 20.0, BlochVector::UnitZ(), tight).final_sample().v;
            double errors[3];
            const double steps[3] = {1e-3, 5e-4, 2.5e-4};
            for (int i = 0; i < 3; ++i) {
                errors[i] = (euler_polygon(params, 20.0, BlochVector::UnitZ(), steps[i]).final_sample().v - exact).norm();
            }
            CHECK(errors[0] / errors[1] >= 1.7);
            CHECK(errors[0] / errors[1] <= 2.3);
            CHECK(errors[1] / errors[2] >= 1.7);
            CHECK(errors[1] / errors[2] <= 2.3);
        }
    }
}

TEST_CASE("argument and budget errors") {
    CHECK_THROWS_AS(evolve(instance(8, 1.0, 1.0), -1.0), DomainError);
    CHECK_THROWS_AS(evolve(instance(8, 1.0, 1.0), 1.0, BlochVector(1.0, 1.0, 0.0)), DomainError);
    SimOptions bad;
    bad.sample_count = 1;
    CHECK_THROWS_AS(evolve(instance(8, 1.0, 1.0), 1.0, BlochVector::UnitZ(), bad), DomainError);
    SimOptions starved;
    starved.max_steps = 10;
    try {
        evolve(instance(16, 0.0, 1.0), 1e5, BlochVector::UnitZ(), starved);
        FAIL("expected IntegrationFailure");
    } catch (const IntegrationFailure& e) {
        CHECK(e.reached() >= 0.0);
        CHECK(e.reached() < 1.0);
    }
}

TEST_CASE("mutated field raises purity") {
    BlochField field(instance(16, 1.0, 1.0), 20.0);
    field.flip_decoherence_sign();
    const Trajectory traj = evolve_field(field, BlochVector(0.5, 0.0, 0.0), SimOptions{});
    CHECK(traj.final_sample().v.norm() > 0.5 + 1e-3);
}

}  // TEST_SUITE

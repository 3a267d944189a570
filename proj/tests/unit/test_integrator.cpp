#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "adqs/errors.hpp"
#include "adqs/integrator.hpp"
#include "doctest.h"

using namespace adqs;
using doctest::Approx;

TEST_SUITE("integrator") {

TEST_CASE("exponential decay to tolerance") {
    Eigen::Vector2d y(1.0, 2.0);
    auto rhs = [](double, const Eigen::Vector2d& v) { return Eigen::Vector2d(-v(0), -3.0 * v(1)); };
    StepControl ctl;
    ctl.rel_tol = 1e-10;
    ctl.abs_tol = 1e-12;
    const std::vector<double> none;
    integrate_dopri5(rhs, y, 0.0, 2.0, ctl, std::span<const double>(none), [](std::size_t, double, const auto&) {});
    CHECK(y(0) == Approx(std::exp(-2.0)).epsilon(1e-9));
    CHECK(y(1) == Approx(2.0 * std::exp(-6.0)).epsilon(1e-9));
}

TEST_CASE("dense output is accurate between steps") {
    // Rotation: y = (cos 5t, sin 5t).
    Eigen::Vector2d y(1.0, 0.0);
    auto rhs = [](double, const Eigen::Vector2d& v) { return Eigen::Vector2d(-5.0 * v(1), 5.0 * v(0)); };
    StepControl ctl;
    ctl.rel_tol = 1e-10;
    ctl.abs_tol = 1e-12;
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(i / 200.0);
    std::vector<int> seen(grid.size(), 0);
    double worst = 0.0;
    const auto stats = integrate_dopri5(rhs, y, 0.0, 1.0, ctl, std::span<const double>(grid),
                                        [&](std::size_t i, double t, const Eigen::Vector2d& v) {
                                            ++seen[i];
                                            CHECK(t == grid[i]);
                                            worst = std::max(worst, std::abs(v(0) - std::cos(5 * t)));
                                            worst = std::max(worst, std::abs(v(1) - std::sin(5 * t)));
                                        });
    CHECK(worst <= 1e-8);
    for (int count : seen) CHECK(count == 1);
    CHECK(stats.accepted < 200);  // samples do not force steps
}

TEST_CASE("complex matrix states") {
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Identity(2, 2);
    const std::complex<double> i(0.0, 1.0);
    auto rhs = [&](double, const Eigen::MatrixXcd& m) -> Eigen::MatrixXcd { return i * m; };
    const std::vector<double> none;
    integrate_dopri5(rhs, y, 0.0, 1.0, StepControl{}, std::span<const double>(none),
                     [](std::size_t, double, const auto&) {});
    CHECK(std::abs(y(0, 0) - std::exp(i)) <= 1e-7);
}

TEST_CASE("step budget exhaustion reports the reached time") {
    Eigen::Vector2d y(1.0, 0.0);
    auto rhs = [](double, const Eigen::Vector2d& v) { return Eigen::Vector2d(-1e3 * v(1), 1e3 * v(0)); };
    StepControl ctl;
    ctl.max_steps = 50;
    const std::vector<double> none;
    try {
        integrate_dopri5(rhs, y, 0.0, 1.0, ctl, std::span<const double>(none), [](std::size_t, double, const auto&) {});
        FAIL("expected IntegrationFailure");
    } catch (const IntegrationFailure& e) {
        CHECK(e.reached() > 0.0);
        CHECK(e.reached() < 1.0);
    }
}

}  // TEST_SUITE

#include <cmath>
#include <numbers>

#include "adqs/errors.hpp"
#include "adqs/quadrature.hpp"
#include "doctest.h"

using namespace adqs;
using doctest::Approx;

TEST_SUITE("quadrature") {

TEST_CASE("smooth integrands") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) == Approx(2.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0) ==
          Approx(std::numbers::pi / 4.0).epsilon(1e-13));
    CHECK(integrate([](double) { return 3.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("kinks are handled by splitting") {
    auto f = [](double x) { return std::abs(x - 0.3); };
    CHECK(integrate_split(f, 0.0, 1.0, {0.3}) == Approx(0.045 + 0.245).epsilon(1e-13));
}

TEST_CASE("sharp peaks resolve") {
    const double w = 1e-3;
    auto f = [w](double x) { return w / (w * w + (x - 0.5) * (x - 0.5)); };
    const double exact = 2.0 * std::atan(0.5 / w);
    CHECK(integrate_split(f, 0.0, 1.0, {0.5 - 10 * w, 0.5, 0.5 + 10 * w}) == Approx(exact).epsilon(1e-10));
}

TEST_CASE("non-finite integrands are reported") {
    CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0), NumericalFailure);
}

}  // TEST_SUITE

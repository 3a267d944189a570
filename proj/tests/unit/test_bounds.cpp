#include <vector>
#include <cmath>
#include <numbers>

#include "adqs/bounds.hpp"
#include "adqs/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adqs;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// C(alpha) at 30 significant digits from an arbitrary-precision nested
// quadrature, frozen here (global regime, sigma = 1, unless noted).
struct Frozen {
    double alpha;
    double value;
};
constexpr Frozen kFrozenGlobal[] = {
    {0.0, 0.10730091830127584519},  {0.5, 0.0617356051146222164},  {1.0, 0.0374485791545695740},
    {2.0, 0.0158324106456455499},   {3.0, 0.00779042703093512000}, {50.0, 4.20453980980522015e-6},
};
constexpr double kFrozenLocalSigmaOneAtOne = 0.0422228597991684555;

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("semi-open global bound") {
    CHECK(semi_open_global_bound(16, 160.0, 1.0, 0.0, 0.0, 0.0) == Approx(0.6 * kPi).epsilon(1e-15));
    const double at_t = semi_open_global_bound(64, 100.0, 0.6, 0.8, 0.4, 0.3);
    CHECK(semi_open_global_bound(64, 1e12, 0.6, 0.8, 0.4, 0.3) < 1e-8);
    CHECK(semi_open_global_bound(64, 200.0, 0.6, 0.8, 0.4, 0.3) == Approx(at_t / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(semi_open_global_bound(16, 10.0, 0.0, 1.0, 0.0, 0.0), DomainError);
}

TEST_CASE("semi-open local bound") {
    CHECK(semi_open_local_bound(64, 8.0 * kPi * kPi, 1.0, 0.0, 0.0, 0.0) == Approx(2.0).epsilon(1e-14));
    const double b1 = semi_open_local_bound(100, 50.0, 0.7, 0.7, 1.2, 0.0);
    const double b2 = semi_open_local_bound(100, 100.0, 0.7, 0.7, 1.2, 0.0);
    CHECK(b2 == Approx(b1 / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(semi_open_local_bound(16, 10.0, 0.0, 1.0, 0.0, 0.0), DomainError);
}

TEST_CASE("wide-open bounds") {
    CHECK(wide_open_global_bound(4, 8.0 * kPi, 1.0, 0.0) == Approx(1.0).epsilon(1e-15));
    CHECK(wide_open_local_bound(9, 9.0 * kPi * kPi, 1.0, 0.0) == Approx(0.5).epsilon(1e-15));
    CHECK(wide_open_global_bound(4, 8.0 * kPi, 1.0, 0.5) == Approx((1.0 + kPi) / kPi).epsilon(1e-15));
    CHECK_THROWS_AS(wide_open_global_bound(4, 1.0, -0.1, 0.0), DomainError);
    CHECK_THROWS_AS(wide_open_local_bound(4, 1.0, 0.5, 0.0), DomainError);
}

TEST_CASE("Phi") {
    CHECK(phi(2.0, 1.0) == Approx(14.0 / 3.0).epsilon(1e-15));
    CHECK(phi(0.7, 0.0) == 0.7);
    CHECK(phi(1.5, 2.0) == Approx(1.5 + 2.0 * std::pow(1.5, 3) / 3.0 + std::pow(1.5, 5) / 5.0).epsilon(1e-15));
    for (double sigma : {0.0, 0.3, 1.0, 1.7, 3.0}) {
        for (double x : {0.1, 0.9, 2.5}) {
            CHECK(phi(-x, sigma) == Approx(-phi(x, sigma)).epsilon(1e-14));
            const double reference = oracle::gauss5([sigma](double t) { return std::pow(1.0 + t * t, sigma); }, 0.0, x, 200);
            CHECK(phi(x, sigma) == Approx(reference).epsilon(1e-11));
        }
    }
    CHECK_THROWS_AS(phi(1.0, -1.0), DomainError);
}

TEST_CASE("alpha") {
    CHECK(alpha_of(2, 2.0, 0.0, Schedule::Global) == Approx(1.0).epsilon(1e-15));
    CHECK(alpha_of(2, 2.0 * std::atan(1.0), 0.0, Schedule::Local) == Approx(1.0).epsilon(1e-15));
    CHECK(alpha_of(64, 200.0, 1.0, Schedule::Global) ==
          Approx(2.0 * alpha_of(64, 100.0, 1.0, Schedule::Global)).epsilon(1e-15));
}

TEST_CASE("necessity functional against independent quadrature") {
    CHECK(std::abs(necessity_c(0.0, 1.0, Schedule::Global) - oracle::necessity_c_at_zero()) <= 1e-6);
    for (double alpha : {0.0, 0.5, 2.0, 7.0}) {
        const double reference = oracle::necessity_c_sigma_one(alpha);
        CHECK(necessity_c(alpha, 1.0, Schedule::Global) == Approx(reference).epsilon(1e-7));
    }
}

TEST_CASE("necessity functional frozen values") {
    for (const auto& f : kFrozenGlobal) {
        CAPTURE(f.alpha);
        CHECK(necessity_c(f.alpha, 1.0, Schedule::Global) == Approx(f.value).epsilon(1e-7));
    }
    // The local regime at sigma = 1 uses Phi(x) = x.
    CHECK(necessity_c(1.0, 1.0, Schedule::Local) == Approx(kFrozenLocalSigmaOneAtOne).epsilon(1e-7));
    // At alpha = 0 the regime does not matter.
    CHECK(necessity_c(0.0, 2.0, Schedule::Local) == Approx(kFrozenGlobal[0].value).epsilon(1e-8));
}

TEST_CASE("necessity functional shape") {
    CHECK(necessity_c(2.0, 1.0, Schedule::Global) < necessity_c(1.0, 1.0, Schedule::Global));
    CHECK(necessity_c(50.0, 1.0, Schedule::Global) < 1e-3 * necessity_c(0.0, 1.0, Schedule::Global));
    CHECK(necessity_c(NecessityParams{3.0, 1.0, Schedule::Global}) == necessity_c(3.0, 1.0, Schedule::Global));
    CHECK_THROWS_AS(necessity_c(-1.0, 1.0, Schedule::Global), DomainError);
    CHECK_THROWS_AS(necessity_c(1.0, 0.5, Schedule::Local), DomainError);
}

TEST_CASE("necessity functional inverse") {
    for (double y : {0.01, 0.05, 0.1}) {
        const double alpha = necessity_c_inverse(y, 1.0, Schedule::Global);
        CHECK(std::abs(necessity_c(alpha, 1.0, Schedule::Global) - y) <= 1e-7);
    }
    CHECK(necessity_c_inverse(0.01, 1.0, Schedule::Global) > necessity_c_inverse(0.05, 1.0, Schedule::Global));
    CHECK(necessity_c_inverse(0.05, 1.0, Schedule::Global) > necessity_c_inverse(0.1, 1.0, Schedule::Global));
    CHECK(std::abs(necessity_c_inverse(necessity_c(3.0, 1.0, Schedule::Global), 1.0, Schedule::Global) - 3.0) <= 1e-6);
    CHECK(std::abs(necessity_c_inverse(necessity_c(2.0, 1.0, Schedule::Local), 1.0, Schedule::Local) - 2.0) <= 1e-6);
    CHECK_THROWS_AS(necessity_c_inverse(0.2, 1.0, Schedule::Global), RangeError);
    CHECK_THROWS_AS(necessity_c_inverse(0.0, 1.0, Schedule::Global), RangeError);
}

TEST_CASE("run-time sandwich") {
    const auto wide = runtime_bounds_for_p(16, 0.5, 1.0, Schedule::Global, Openness::WideOpen);
    CHECK(wide.t_high == Approx(128.0 * kPi).epsilon(1e-15));
    REQUIRE(wide.t_low.has_value());
    CHECK(*wide.t_low == 0.0);  // 1 - p exceeds C(0)
    CHECK(wide.lower_vacuous);

    const auto semi = runtime_bounds_for_p(16, 0.5, 1.0, Schedule::Global, Openness::SemiOpen, 1.0, 0.0, 0.0);
    CHECK(semi.t_high == Approx(kPi * 16.0 * 6.0 / 0.5).epsilon(1e-15));
    CHECK_FALSE(semi.t_low.has_value());

    const auto semi_local = runtime_bounds_for_p(64, 0.9, 1.0, Schedule::Local, Openness::SemiOpen, 0.6, 0.8, 0.5);
    CHECK(semi_local.t_high ==
          Approx(8.0 / 0.1 * (2.0 * kPi * kPi / 0.6) * (1.0 + std::sqrt(2.0) * 0.8 * 0.5 / (4.0 * 0.6))).epsilon(1e-14));

    const auto local = runtime_bounds_for_p(9, 0.5, 1.0, Schedule::Local, Openness::WideOpen);
    CHECK(local.t_high == Approx(kPi * kPi / 2.0 * 9.0 / 0.5).epsilon(1e-15));

    for (const auto regime : {Schedule::Global, Schedule::Local}) {
        const auto tight = runtime_bounds_for_p(256, 0.95, 1.0, regime, Openness::WideOpen);
        REQUIRE(tight.t_low.has_value());
        CHECK_FALSE(tight.lower_vacuous);
        CHECK(*tight.t_low > 0.0);
        CHECK(*tight.t_low <= tight.t_high);
    }
    const double c_inv = necessity_c_inverse(0.05, 1.0, Schedule::Global);
    CHECK(*runtime_bounds_for_p(256, 0.95, 1.0, Schedule::Global, Openness::WideOpen).t_low ==
          Approx(2.0 * 256.0 * std::sqrt(255.0) * c_inv).epsilon(1e-12));

    CHECK_THROWS_AS(runtime_bounds_for_p(16, 0.5, 1.0, Schedule::Global, Openness::SemiOpen, 0.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(runtime_bounds_for_p(16, 1.0, 1.0, Schedule::Global, Openness::WideOpen), DomainError);
    CHECK_THROWS_AS(runtime_bounds_for_p(16, 0.5, 0.5, Schedule::Local, Openness::WideOpen), DomainError);
}

TEST_CASE("condition integral") {
    CHECK(condition_integral(64, 0.0) == 0.0);
    for (const std::int64_t n : std::vector<std::int64_t>{2, 16, 1024, 1 << 20}) {
        CHECK(condition_integral(n, 0.5) <= 2.0);
        for (double sigma : {0.25, 0.5, 1.0, 2.0}) {
            CAPTURE(n);
            CAPTURE(sigma);
            CHECK(condition_integral(n, sigma) == Approx(oracle::condition_integral_closed(n, sigma)).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(condition_integral(1, 1.0), DomainError);
}

TEST_CASE("zeta") {
    for (std::int64_t n : {2, 16, 1000}) CHECK(zeta_min(n, 0.5) == Approx(1.0).epsilon(1e-12));
    CHECK(zeta_min(16, 1.0) == Approx(0.25).epsilon(1e-12));
    for (double sigma : {0.5, 1.0, 2.0}) {
        for (std::int64_t n : {3, 64, 4097}) {
            CHECK(std::abs(zeta_min(n, sigma) - std::pow(static_cast<double>(n), -(sigma - 0.5))) <= 1e-9);
        }
    }
    CHECK(zeta_min(64, 0.25) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bound reports") {
    const auto upper = BoundReport::upper(BoundName::WideOpenGlobal, 1.0, 0.25);
    CHECK(upper.margin == 0.75);
    CHECK(upper.holds);
    CHECK_FALSE(BoundReport::upper(BoundName::WideOpenGlobal, 1.0, 1.1).holds);
    CHECK(BoundReport::upper(BoundName::WideOpenGlobal, 1.0, 1.0 + 5e-10).holds);
    const auto lower = BoundReport::lower(BoundName::RuntimeLower, 10.0, 12.0);
    CHECK(lower.margin == 2.0);
    CHECK(lower.holds);
    CHECK_FALSE(BoundReport::lower(BoundName::RuntimeLower, 10.0, 9.0).holds);
    CHECK(to_string(BoundName::SemiOpenLocal) == "SemiOpenLocal");
}

TEST_CASE("coherence magnitude") {
    CHECK(coherence_magnitude(BlochVector::UnitZ()) == 0.0);
    CHECK(coherence_magnitude(BlochVector(0.6, 0.8, 0.0)) == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("applicable deviation bound selection") {
    CHECK(applicable_deviation_bound(ModelParams::from_omega(16, 0.5, 1.0, Schedule::Global), 10.0, 0.0).first ==
          BoundName::SemiOpenGlobal);
    CHECK(applicable_deviation_bound(ModelParams::from_omega(16, 0.5, 1.0, Schedule::Local), 10.0, 0.0).first ==
          BoundName::SemiOpenLocal);
    CHECK(applicable_deviation_bound(ModelParams::from_omega(16, 1.0, 1.0, Schedule::Global), 10.0, 0.0).first ==
          BoundName::WideOpenGlobal);
    const auto [name, value] = applicable_deviation_bound(ModelParams::from_omega(9, 1.0, 1.0, Schedule::Local),
                                                          9.0 * kPi * kPi, 0.0);
    CHECK(name == BoundName::WideOpenLocal);
    CHECK(value == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("simulated deviation respects the bounds") {
    for (const double omega : {0.3, 1.0}) {
        for (const auto schedule : {Schedule::Global, Schedule::Local}) {
            const auto report =
                check_deviation_bound(ModelParams::from_omega(64, omega, 1.0, schedule), 500.0, BlochVector(0.3, 0.0, 0.9));
            CHECK(report.holds);
            CHECK(report.observed >= 0.0);
        }
    }
}

}  // TEST_SUITE

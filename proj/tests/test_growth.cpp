#include <doctest.h>

#include <cmath>
#include <variant>

#include "nlrd/errors.hpp"
#include "nlrd/growth.hpp"

using namespace nlrd;

TEST_SUITE("growth") {
    TEST_CASE("case-1 profile: logistic-type saturation at 3") {
        GrowthProfile g = case1_profile();
        CHECK(g.rho(0.0) == doctest::Approx(1.0));
        CHECK(g.rho(30.0) == doctest::Approx(3.0).epsilon(1e-9));
        // rho_dot consistent with a central difference.
        double h = 1e-6;
        double fd = (g.rho(1.0 + h) - g.rho(1.0 - h)) / (2.0 * h);
        CHECK(g.rho_dot(1.0) == doctest::Approx(fd).epsilon(1e-6));
        GrowthValidation v = classify_validate(g, 100.0, 1e-6);
        CHECK(v.pass);
        CHECK(std::holds_alternative<AsymptoticallyFixed>(g.kind));
    }

    TEST_CASE("case-2 profile: asymptotically periodic with T = 20") {
        GrowthProfile g = case2_profile();
        CHECK(g.rho(0.0) == doctest::Approx(1.0));
        const auto& ap = std::get<AsymptoticallyPeriodic>(g.kind);
        CHECK(ap.period == doctest::Approx(20.0));
        // rho approaches the declared periodic limit.
        for (double t : {100.0, 110.0, 115.0})
            CHECK(std::abs(g.rho(t) - ap.rho_T(t)) < 1e-6);
        // The periodic limit really is 20-periodic.
        CHECK(ap.rho_T(7.3) == doctest::Approx(ap.rho_T(27.3)).epsilon(1e-12));
        CHECK(classify_validate(g, 200.0, 1e-5).pass);
    }

    TEST_CASE("case-3 profile: linear growth, vanishing rate") {
        GrowthProfile g = case3_profile();
        CHECK(g.rho(0.0) == doctest::Approx(1.0));
        CHECK(g.rho(10.0) == doctest::Approx(6.0));
        CHECK(g.rho_dot(5.0) == doctest::Approx(0.5));
        const auto& ub = std::get<AsymptoticallyUnbounded>(g.kind);
        CHECK(ub.k == 0.0);
        CHECK(classify_validate(g, 1000.0, 1e-2).pass);
        CHECK(relative_rate(g, 10.0) == doctest::Approx(0.5 / 6.0));
    }

    TEST_CASE("exponential profile has constant relative rate") {
        GrowthProfile g = exponential_profile(0.3);
        CHECK(relative_rate(g, 0.0) == doctest::Approx(0.3));
        CHECK(relative_rate(g, 5.0) == doctest::Approx(0.3));
        CHECK(classify_validate(g, 20.0, 1e-8).pass);
    }

    TEST_CASE("misdeclared kind fails validation without throwing") {
        GrowthProfile g = case1_profile();      // saturates at 3
        g.kind = AsymptoticallyUnbounded{1.0};  // declared unbounded with rate 1
        GrowthValidation v = classify_validate(g, 100.0, 1e-6);
        CHECK_FALSE(v.pass);
        CHECK(!v.message.empty());
    }

    TEST_CASE("fixed profile and label lookup") {
        GrowthProfile g = fixed_profile();
        CHECK(g.rho(7.0) == 1.0);
        CHECK(g.rho_dot(7.0) == 0.0);
        CHECK_THROWS_AS(growth_by_label("nope"), ConfigError);
        CHECK(growth_by_label("case4").rho(30.0) == doctest::Approx(3.0).epsilon(1e-9));
    }
}

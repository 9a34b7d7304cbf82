#include <doctest.h>

#include <cmath>

#include "nlrd/errors.hpp"
#include "nlrd/steady.hpp"

using namespace nlrd;

TEST_SUITE("steady") {
    TEST_CASE("ODE equilibrium for the WN system at k = 0") {
        ReactionSystem sys = wn_reaction({});
        SteadyResult res = ode_equilibrium(sys, 0.0, 1e-10);
        CHECK_FALSE(res.zero_state);
        // Independent root-finding oracle on the 2x2 algebraic system.
        CHECK(res.point[0] == doctest::Approx(2845.975519).epsilon(1e-6));
        CHECK(res.point[1] == doctest::Approx(99.780873).epsilon(1e-6));
        CHECK(res.residual <= 1e-10);
        // The long-run ODE endpoint agrees with Newton.
        OdeTrajectory traj = solve_limit_ode(sys, 0.0, Vec{2500.0, 50.0}, 3000.0, 0.05);
        CHECK(std::abs(traj.states.back()[0] - res.point[0]) < 1e-4 * res.point[0]);
        CHECK(std::abs(traj.states.back()[1] - res.point[1]) < 1e-4 * res.point[1]);
    }

    TEST_CASE("large dilution k drives the ODE equilibrium to zero") {
        ReactionSystem sys = wn_reaction({});
        SteadyResult res = ode_equilibrium(sys, 1.0, 1e-10);  // s(A) = 0.5348 - 1 < 0
        CHECK(res.zero_state);
        CHECK(res.point[0] == 0.0);
        CHECK(res.point[1] == 0.0);
        CHECK(res.spectral_value < 0.0);
    }

    TEST_CASE("scalar logistic equilibrium is the carrying capacity") {
        ReactionSystem sys = logistic_reaction(1.0, 10.0);
        SteadyResult res = ode_equilibrium(sys, 0.0, 1e-12);
        CHECK(res.point[0] == doctest::Approx(10.0).epsilon(1e-10));
    }

    TEST_CASE("autonomous state: full-retention logistic settles near K inland") {
        // rho = 10 with n = 100 puts the rescaled tent's kinks on grid
        // offsets, so interior quadrature row sums are exact: the discrete
        // steady state cannot exceed the carrying capacity.
        ReactionSystem sys = logistic_reaction(1.0, 10.0);
        Grid grid = build_grid(100);
        SteadyResult res = autonomous_state(sys, tent_kernel(), 10.0, grid, Vec{0.2}, 1e-8);
        CHECK_FALSE(res.zero_state);
        CHECK(res.spectral_value > 0.0);
        for (std::size_t j = 0; j < 100; ++j) {
            double y = grid.nodes[j];
            if (y > 0.4 && y < 0.6) CHECK(res.state.values(0, j) == doctest::Approx(10.0).epsilon(0.01));
            CHECK(res.state.values(0, j) <= 10.0 + 1e-9);
            CHECK(res.state.values(0, j) > 0.0);
        }
        CHECK(res.residual <= 1e-5);
    }

    TEST_CASE("autonomous state: subcritical configuration returns zero") {
        // Strong diffusion loss, weak growth: lambda* < 0.
        ReactionSystem sys = logistic_reaction(0.01, 10.0);
        Grid grid = build_grid(30);
        SteadyResult res = autonomous_state(sys, tent_kernel(), 1.0, grid, Vec{1.0}, 1e-8);
        CHECK(res.zero_state);
        CHECK(res.spectral_value < 0.0);
        CHECK(res.residual == 0.0);
    }

    TEST_CASE("periodic state of a constant family reduces to the stationary state") {
        ReactionSystem sys = logistic_reaction(1.0, 10.0);
        Grid grid = build_grid(100);
        SteadyResult stat = autonomous_state(sys, tent_kernel(), 10.0, grid, Vec{0.2}, 1e-8);
        GrowthProfile g;
        g.rho = [](double) { return 10.0; };
        g.rho_dot = [](double) { return 0.0; };
        g.kind = AsymptoticallyPeriodic{5.0, [](double) { return 10.0; }, [](double) { return 0.0; }};
        g.label = "constant_periodic";
        SteadyResult per = periodic_state(sys, tent_kernel(), g, 5.0, grid, Vec{0.2}, 1e-7);
        CHECK_FALSE(per.zero_state);
        double diff = 0.0;
        for (std::size_t j = 0; j < 100; ++j)
            diff = std::max(diff, std::abs(per.state.values(0, j) - stat.state.values(0, j)));
        CHECK(diff < 1e-4);
    }
}

#include <doctest.h>

#include <cmath>

#include "nlrd/errors.hpp"
#include "nlrd/simulate.hpp"

using namespace nlrd;

namespace {

// Scalar linear decay u' = -u as a degenerate reaction system (D = 0).
ReactionSystem decay_system() {
    ReactionSystem sys;
    sys.m = 1;
    sys.cap_v = {10.0};
    sys.label = "linear_decay";
    sys.f = [](std::span<const double> u, std::span<double> out) { out[0] = -u[0]; };
    sys.jacobian = [](std::span<const double>, Matrix& J) { J(0, 0) = -1.0; };
    return sys;
}

SimProblem decay_problem(std::size_t n) {
    Grid grid = build_grid(n);
    StateField u0{Matrix(1, n), 0.0};
    for (std::size_t j = 0; j < n; ++j) u0.values(0, j) = 1.0;
    return SimProblem{decay_system(), tent_kernel(), fixed_profile(), grid, Vec{0.0}, u0};
}

double decay_error(double dt) {
    SimProblem pb = decay_problem(4);
    Trajectory traj = integrate(pb, 1.0, dt, 0);
    double exact = std::exp(-1.0);
    double err = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        err = std::max(err, std::abs(traj.snapshots.back().values(0, j) - exact));
    return err;
}

}  // namespace

TEST_SUITE("simulate") {
    TEST_CASE("RK4 observed order on linear decay is ~4") {
        double e1 = decay_error(0.02), e2 = decay_error(0.01), e3 = decay_error(0.005);
        double p12 = std::log2(e1 / e2), p23 = std::log2(e2 / e3);
        CHECK(p12 > 3.8);
        CHECK(p12 < 4.2);
        CHECK(p23 > 3.8);
        CHECK(p23 < 4.2);
    }

    TEST_CASE("zero data stay zero; snapshots carry correct times") {
        SimProblem pb = decay_problem(4);
        pb.u0.values.a.assign(pb.u0.values.a.size(), 0.0);
        Trajectory traj = integrate(pb, 1.0, 0.1, 2);
        CHECK(traj.snapshots.front().time == 0.0);
        CHECK(traj.snapshots.back().time == doctest::Approx(1.0));
        for (const auto& s : traj.snapshots)
            for (double v : s.values.a) CHECK(v == 0.0);
        CHECK(traj.scheme == "rk4");
    }

    TEST_CASE("dt above the stability bound is rejected") {
        SimProblem pb = decay_problem(4);
        pb.diffusion[0] = 1.0;
        double bound = stability_dt_bound(pb, 1.0);
        CHECK(bound > 0.0);
        CHECK_THROWS_AS(integrate(pb, 1.0, 10.0 * bound, 0), ConfigError);
    }

    TEST_CASE("initial data outside the cap are rejected") {
        SimProblem pb = decay_problem(4);
        pb.u0.values(0, 0) = 11.0;
        CHECK_THROWS_AS(integrate(pb, 1.0, 0.01, 0), ConfigError);
    }

    TEST_CASE("cached-K and strict-K integration agree on a moving domain") {
        Grid grid = build_grid(32);
        ReactionSystem sys = wn_reaction({});
        StateField u0{Matrix(2, 32), 0.0};
        for (std::size_t j = 0; j < 32; ++j) {
            u0.values(0, j) = std::sin(grid.nodes[j] / 2.0);
            u0.values(1, j) = 0.5 * grid.nodes[j] * (1.0 - grid.nodes[j]);
        }
        SimProblem pb{sys, tent_kernel(), case1_profile(), grid, Vec{0.03, 2.0}, u0};
        // Cached mode freezes K over each RK4 step, so it differs from strict
        // mode by an O(dt) term; the gap must be small and shrink with dt.
        auto gap_at = [&](double dt) {
            IntegrateOptions strict;
            strict.strict_k = true;
            Trajectory b = integrate(pb, 5.0, dt, 0, strict);
            Trajectory a = integrate(pb, 5.0, dt, 0, IntegrateOptions{});
            double diff = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < b.snapshots.back().values.a.size(); ++i) {
                diff = std::max(diff, std::abs(a.snapshots.back().values.a[i] -
                                               b.snapshots.back().values.a[i]));
                scale = std::max(scale, std::abs(b.snapshots.back().values.a[i]));
            }
            return diff / std::max(scale, 1.0);
        };
        double g1 = gap_at(0.01), g2 = gap_at(0.005);
        CHECK(g1 <= 1e-2);
        CHECK(g2 <= 0.75 * g1);
    }

    TEST_CASE("limit ODE solver matches the logistic closed form") {
        ReactionSystem sys = logistic_reaction(1.0, 10.0);
        OdeTrajectory traj = solve_limit_ode(sys, 0.0, Vec{1.0}, 5.0, 0.01);
        double t = traj.times.back();
        double exact = 10.0 / (1.0 + 9.0 * std::exp(-t));
        CHECK(traj.states.back()[0] == doctest::Approx(exact).epsilon(1e-8));
        // With dilution k the equilibrium drops to K (1 - k / r).
        OdeTrajectory traj2 = solve_limit_ode(sys, 0.5, Vec{1.0}, 40.0, 0.01);
        CHECK(traj2.states.back()[0] == doctest::Approx(5.0).epsilon(1e-6));
    }

    TEST_CASE("physical-frame remap scales nodes by rho(t)") {
        SimProblem pb = decay_problem(4);
        Trajectory traj = integrate(pb, 1.0, 0.1, 5);
        GrowthProfile g = case3_profile();  // rho = 0.5 t + 1
        auto samples = remap_physical(traj, g, pb.grid);
        REQUIRE(!samples.empty());
        const auto& last = samples.back();
        CHECK(last.t == doctest::Approx(1.0));
        CHECK(last.x == doctest::Approx(1.5 * pb.grid.nodes[3]));
    }
}

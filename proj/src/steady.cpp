#include "nlrd/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlrd/errors.hpp"

namespace nlrd {

namespace {

// ||rhs||_inf of the frozen-rho (autonomous) system at state u.
double autonomous_residual(const SimProblem& problem, const StateField& u,
                           KernelMatrixCache& cache) {
    StateField du{Matrix(u.values.rows, u.values.cols), u.time};
    rhs(problem, 0.0, u, du, cache, std::numeric_limits<double>::infinity());
    return max_abs(du.values.a);
}

StateField constant_field(const Vec& levels, std::size_t n) {
    StateField s{Matrix(levels.size(), n), 0.0};
    for (std::size_t i = 0; i < levels.size(); ++i)
        std::fill_n(s.values.row(i), n, levels[i]);
    return s;
}

// March u forward by t_chunk in place, reusing the frozen-rho problem.
void march(SimProblem& problem, StateField& u, double t_chunk, double dt) {
    problem.u0 = u;
    IntegrateOptions opts;
    Trajectory traj = integrate(problem, t_chunk, dt, 0, opts);
    u = traj.snapshots.back();
    u.time = 0.0;
}

double sup_gap(const StateField& a, const StateField& b) {
    double g = 0.0;
    for (std::size_t k = 0; k < a.values.a.size(); ++k)
        g = std::max(g, std::abs(a.values.a[k] - b.values.a[k]));
    return g;
}

double min_ordering_margin(const StateField& lo, const StateField& hi) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lo.values.a.size(); ++k)
        m = std::min(m, hi.values.a[k] - lo.values.a[k]);
    return m;
}

}  // namespace

SteadyResult autonomous_state(const ReactionSystem& system, const Kernel& kernel, double rho_inf,
                              const Grid& grid, const Vec& diffusion, double tol) {
    const std::size_t n = grid.nodes.size();
    const std::size_t m = system.m;

    LinearGenerator gen = build_generator(system, kernel, rho_inf, grid, diffusion, 0.0);
    SpectralReport spec = spectral_bound_autonomous(gen);

    SteadyResult result;
    result.kind = SteadyKind::stationary;
    result.spectral_value = spec.value;

    if (spec.value <= 0.0) {
        result.state = constant_field(Vec(m, 0.0), n);
        result.zero_state = true;
        result.residual = 0.0;
        return result;
    }

    SimProblem problem{system, kernel, fixed_profile(), grid, diffusion, {}};
    problem.growth.rho = [rho_inf](double) { return rho_inf; };
    problem.growth.rho_dot = [](double) { return 0.0; };
    problem.growth.kind = AsymptoticallyFixed{rho_inf};
    problem.growth.label = "frozen_rho";

    StateField above = constant_field(system.cap_v, n);
    StateField below{Matrix(m, n), 0.0};
    if (spec.eigvec) {
        double cap_min = *std::min_element(system.cap_v.begin(), system.cap_v.end());
        double delta = 1e-4 * cap_min / max_abs(*spec.eigvec);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                below.values(i, j) = delta * (*spec.eigvec)[i * n + j];
    } else {
        for (auto& v : below.values.a) v = 1e-6;
    }

    problem.u0 = above;
    double dt = 0.8 * stability_dt_bound(problem, 1.0);
    const double t_chunk = 5.0;
    dt = t_chunk / std::ceil(t_chunk / dt);

    KernelMatrixCache cache(kernel, grid);
    cache.at(rho_inf, 0.0);

    const double cap_norm = max_abs(system.cap_v);
    const double order_slack = 1e-9 * cap_norm;
    const double gap_tol = 10.0 * tol * cap_norm;
    const std::size_t max_chunks = 2000;

    double res_above = 0.0;
    for (std::size_t it = 1; it <= max_chunks; ++it) {
        march(problem, above, t_chunk, dt);
        march(problem, below, t_chunk, dt);
        result.iterations = it;

        if (min_ordering_margin(below, above) < -order_slack)
            throw ConvergenceError("autonomous_state: monotone bracket lost ordering");

        res_above = autonomous_residual(problem, above, cache);
        double res_below = autonomous_residual(problem, below, cache);
        if (res_above <= tol && res_below <= tol) break;
        if (it == max_chunks)
            throw ConvergenceError("autonomous_state: residual did not reach tolerance");
    }

    if (sup_gap(above, below) > gap_tol)
        throw ConvergenceError("autonomous_state: upper/lower limits disagree beyond bracket tolerance");

    result.state = above;
    result.residual = res_above;
    return result;
}

SteadyResult periodic_state(const ReactionSystem& system, const Kernel& kernel,
                            const GrowthProfile& growth, double T, const Grid& grid,
                            const Vec& diffusion, double tol) {
    const std::size_t n = grid.nodes.size();
    const std::size_t m = system.m;

    SteadyResult result;
    result.kind = SteadyKind::periodic;

    // Work with the limiting T-periodic profile rho_T when the input is only
    // asymptotically periodic; otherwise take the profile as already periodic.
    GrowthProfile per = growth;
    if (const auto* ap = std::get_if<AsymptoticallyPeriodic>(&growth.kind)) {
        if (ap->rho_T && ap->rho_T_dot) {
            per.rho = ap->rho_T;
            per.rho_dot = ap->rho_T_dot;
            per.label = growth.label + "_periodic_limit";
        }
    }

    KernelGeneratorFamily family{system, kernel, grid, diffusion, per.rho,
                                 [per](double t) { return relative_rate(per, t); }};
    double dt_mono = T / std::ceil(T / 1e-2);
    SpectralReport spec = periodic_bound(family, T, dt_mono);
    result.spectral_value = spec.value;

    // periodic_bound < 0 means ln r(Phi)/T > 0: the zero state is unstable.
    if (spec.value >= 0.0) {
        result.state = constant_field(Vec(m, 0.0), n);
        result.zero_state = true;
        result.residual = 0.0;
        return result;
    }

    SimProblem problem{system, kernel, per, grid, diffusion, constant_field(system.cap_v, n)};
    double dt = 0.8 * stability_dt_bound(problem, T);
    dt = T / std::ceil(T / dt);

    StateField u = problem.u0;
    const std::size_t k_max = 500;
    bool converged = false;
    for (std::size_t k = 0; k < k_max; ++k) {
        problem.u0 = u;
        problem.u0.time = 0.0;
        Trajectory traj = integrate(problem, T, dt, 0, {});
        StateField next = traj.snapshots.back();
        next.time = 0.0;
        result.iterations = k + 1;
        if (sup_gap(next, u) <= tol) {
            u = next;
            converged = true;
            break;
        }
        u = next;
    }
    if (!converged)
        throw ConvergenceError("periodic_state: period map did not converge within 500 periods");

    // Re-run one period from the converged state, sampling at T/200.
    problem.u0 = u;
    problem.u0.time = 0.0;
    double dt_orbit = T / 200.0 / std::ceil(T / 200.0 / dt);
    std::size_t every = static_cast<std::size_t>(std::lround(T / 200.0 / dt_orbit));
    Trajectory orbit = integrate(problem, T, dt_orbit, every, {});
    result.orbit = orbit.snapshots;
    result.state = orbit.snapshots.back();
    result.residual = sup_gap(result.orbit.front(), result.orbit.back());
    return result;
}

SteadyResult ode_equilibrium(const ReactionSystem& system, double k, double tol) {
    const std::size_t m = system.m;
    SteadyResult result;
    result.kind = SteadyKind::ode_equilibrium;

    Matrix A = system.jacobian_at_zero();
    for (std::size_t i = 0; i < m; ++i) A(i, i) -= k;  // n = 1 spatial dimension
    SpectralReport spec = ode_bound(A);
    result.spectral_value = spec.value;

    auto residual_fun = [&](const Vec& w, Vec& r) {
        system.f(w, r);
        for (std::size_t i = 0; i < m; ++i) r[i] -= k * w[i];
    };

    if (spec.value <= 0.0) {
        result.point = Vec(m, 0.0);
        result.zero_state = true;
        result.residual = 0.0;
        return result;
    }

    Vec w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = 0.5 * system.cap_v[i];

    Vec r(m), w_try(m), r_try(m);
    bool newton_ok = false;
    residual_fun(w, r);
    double res = max_abs(r);
    for (std::size_t it = 0; it < 200; ++it) {
        if (res <= tol) {
            newton_ok = true;
            break;
        }
        Matrix J = system.jacobian_at(w);
        for (std::size_t i = 0; i < m; ++i) J(i, i) -= k;
        Vec step = r;
        try {
            lu_solve(J, step);
        } catch (const NumericError&) {
            break;
        }
        double alpha = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t i = 0; i < m; ++i)
                w_try[i] = std::max(0.0, w[i] - alpha * step[i]);
            residual_fun(w_try, r_try);
            if (max_abs(r_try) < res) {
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved) break;
        w = w_try;
        r = r_try;
        res = max_abs(r);
        result.iterations = it + 1;
    }
    if (!newton_ok && res <= tol) newton_ok = true;

    if (!newton_ok) {
        // Long ODE run toward the globally attracting equilibrium.
        Vec w0(m);
        for (std::size_t i = 0; i < m; ++i) w0[i] = 0.5 * system.cap_v[i];
        OdeTrajectory traj = solve_limit_ode(system, k, w0, 5000.0, 0.05);
        w = traj.states.back();
        residual_fun(w, r);
        res = max_abs(r);
        if (res > tol)
            throw ConvergenceError("ode_equilibrium: Newton and ODE fallback both failed");
    }

    result.point = w;
    result.residual = res;
    return result;
}

}  // namespace nlrd

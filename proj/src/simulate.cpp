#include "nlrd/simulate.hpp"

#include <cmath>

#include "nlrd/errors.hpp"

namespace nlrd {

const NonlocalMatrix& KernelMatrixCache::at(double rho, double refresh_tol) {
    if (!cached_ || std::abs(rho - cached_->rho_used) / cached_->rho_used > refresh_tol) {
        cached_ = assemble(kernel_, rho, grid_);
        ++assemblies_;
    }
    return *cached_;
}

void rhs(const SimProblem& problem, double t, const StateField& u, StateField& du,
         KernelMatrixCache& cache, double k_refresh_tol) {
    const std::size_t m = problem.system.m, n = problem.grid.n_nodes();
    const NonlocalMatrix& K = cache.at(problem.growth.rho(t), k_refresh_tol);
    const double dilution = relative_rate(problem.growth, t);

    // Diffusion + dilution, species by species.
    for (std::size_t i = 0; i < m; ++i) {
        matvec(K.entries, {u.values.row(i), n}, {du.values.row(i), n});
        const double d = problem.diffusion[i];
        double* dui = du.values.row(i);
        const double* ui = u.values.row(i);
        for (std::size_t j = 0; j < n; ++j) dui[j] = d * (dui[j] - ui[j]) - dilution * ui[j];
    }
    // Reaction, node by node.
    std::vector<double> uloc(m), floc(m);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) uloc[i] = u.values(i, j);
        problem.system.f(uloc, floc);
        for (std::size_t i = 0; i < m; ++i) du.values(i, j) += floc[i];
    }
    du.time = t;
}

double stability_dt_bound(const SimProblem& problem, double t_end) {
    const std::size_t m = problem.system.m;
    double dmax = 0.0;
    for (double d : problem.diffusion) dmax = std::max(dmax, d);
    // Sampled Lipschitz bound of reaction + dilution on [0, cap_v] x [0, t_end].
    double lf = 0.0;
    Matrix J(m, m);
    Vec u(m);
    const int samples = 64;
    for (int s = 0; s <= samples; ++s) {
        for (std::size_t i = 0; i < m; ++i)
            u[i] = problem.system.cap_v[i] * static_cast<double>(s) / samples;
        problem.system.jacobian(u, J);
        for (std::size_t i = 0; i < m; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < m; ++j) row += std::abs(J(i, j));
            lf = std::max(lf, row);
        }
    }
    double cmax = 0.0;
    for (int s = 0; s <= samples; ++s)
        cmax = std::max(cmax, std::abs(relative_rate(problem.growth, t_end * s / samples)));
    return 0.5 / (2.0 * dmax + lf + cmax);
}

namespace {

void check_and_clamp(StateField& u, const Vec& cap, double t) {
    const double cap_norm = max_abs(cap);
    const double tol = 1e-9 * cap_norm;
    for (std::size_t i = 0; i < u.values.rows; ++i) {
        double* r = u.values.row(i);
        for (std::size_t j = 0; j < u.values.cols; ++j) {
            if (!std::isfinite(r[j]))
                throw NumericError("integrate: non-finite state at t=" + std::to_string(t));
            if (r[j] < -tol || r[j] > cap[i] + tol)
                throw NumericError("integrate: state left [0, cap_v] beyond tolerance at t=" +
                                   std::to_string(t) + "; reduce dt");
            if (r[j] < 0.0) r[j] = 0.0;
            if (r[j] > cap[i]) r[j] = cap[i];
        }
    }
}

void axpy_field(const StateField& x, double a, const StateField& y, StateField& out) {
    for (std::size_t k = 0; k < x.values.a.size(); ++k) out.values.a[k] = x.values.a[k] + a * y.values.a[k];
}

}  // namespace

Trajectory integrate(const SimProblem& problem, double t_end, double dt,
                     std::size_t snapshot_every, const IntegrateOptions& opts) {
    if (!(dt > 0.0)) throw ConfigError("integrate: dt must be positive");
    const double bound = stability_dt_bound(problem, t_end);
    if (dt > bound)
        throw ConfigError("integrate: dt=" + std::to_string(dt) + " exceeds stability bound " +
                          std::to_string(bound));
    const std::size_t m = problem.system.m, n = problem.grid.n_nodes();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = problem.u0.values(i, j);
            if (v < 0.0 || v > problem.system.cap_v[i])
                throw ConfigError("integrate: u0 outside [0, cap_v]");
        }

    KernelMatrixCache cache(problem.kernel, problem.grid);
    // strict_k reassembles at every stage; cached mode refreshes K at step
    // starts only (RK4 stages use the frozen matrix of the step).
    const double cache_tol =
        opts.strict_k ? 0.0 : std::numeric_limits<double>::infinity();

    Trajectory traj;
    traj.dt_used = dt;
    traj.scheme = "rk4";
    traj.scenario_hash = opts.scenario_hash;

    StateField u = problem.u0;
    u.time = 0.0;
    traj.snapshots.push_back(u);

    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    StateField k1{Matrix(m, n), 0}, k2{Matrix(m, n), 0}, k3{Matrix(m, n), 0}, k4{Matrix(m, n), 0},
        tmp{Matrix(m, n), 0};
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * dt;
        if (!opts.strict_k) cache.at(problem.growth.rho(t), opts.k_refresh_tol);
        rhs(problem, t, u, k1, cache, cache_tol);
        axpy_field(u, 0.5 * dt, k1, tmp);
        rhs(problem, t + 0.5 * dt, tmp, k2, cache, cache_tol);
        axpy_field(u, 0.5 * dt, k2, tmp);
        rhs(problem, t + 0.5 * dt, tmp, k3, cache, cache_tol);
        axpy_field(u, dt, k3, tmp);
        rhs(problem, t + dt, tmp, k4, cache, cache_tol);
        for (std::size_t idx = 0; idx < u.values.a.size(); ++idx)
            u.values.a[idx] += dt / 6.0 *
                               (k1.values.a[idx] + 2.0 * k2.values.a[idx] +
                                2.0 * k3.values.a[idx] + k4.values.a[idx]);
        u.time = static_cast<double>(s + 1) * dt;
        check_and_clamp(u, problem.system.cap_v, u.time);
        if (snapshot_every > 0 && ((s + 1) % snapshot_every == 0 || s + 1 == steps))
            traj.snapshots.push_back(u);
    }
    if (traj.snapshots.back().time != u.time) traj.snapshots.push_back(u);
    return traj;
}

OdeTrajectory solve_limit_ode(const ReactionSystem& system, double k, const Vec& w0, double t_end,
                              double dt) {
    if (!(dt > 0.0)) throw ConfigError("solve_limit_ode: dt must be positive");
    const std::size_t m = system.m;
    for (std::size_t i = 0; i < m; ++i)
        if (w0[i] < 0.0 || w0[i] > system.cap_v[i])
            throw ConfigError("solve_limit_ode: w0 outside [0, cap_v]");

    auto f = [&](const Vec& w, Vec& out) {
        system.f(w, out);
        for (std::size_t i = 0; i < m; ++i) out[i] -= k * w[i];
    };
    OdeTrajectory traj;
    Vec w = w0, k1(m), k2(m), k3(m), k4(m), tmp(m);
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    traj.times.push_back(0.0);
    traj.states.push_back(w);
    for (std::size_t s = 0; s < steps; ++s) {
        f(w, k1);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = w[i] + 0.5 * dt * k1[i];
        f(tmp, k2);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = w[i] + 0.5 * dt * k2[i];
        f(tmp, k3);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = w[i] + dt * k3[i];
        f(tmp, k4);
        for (std::size_t i = 0; i < m; ++i)
            w[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (double v : w)
            if (!std::isfinite(v))
                throw NumericError("solve_limit_ode: non-finite state at step " + std::to_string(s));
        traj.times.push_back(static_cast<double>(s + 1) * dt);
        traj.states.push_back(w);
    }
    return traj;
}

std::vector<PhysicalSample> remap_physical(const Trajectory& trajectory,
                                           const GrowthProfile& growth, const Grid& grid) {
    std::vector<PhysicalSample> out;
    for (const StateField& snap : trajectory.snapshots) {
        const double rho = growth.rho(snap.time);
        for (std::size_t i = 0; i < snap.values.rows; ++i)
            for (std::size_t j = 0; j < snap.values.cols; ++j)
                out.push_back({snap.time, rho * grid.nodes[j], i, snap.values(i, j)});
    }
    return out;
}

}  // namespace nlrd

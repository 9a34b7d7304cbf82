#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlrd/discretization.hpp"
#include "nlrd/growth.hpp"
#include "nlrd/kernels.hpp"
#include "nlrd/models.hpp"

namespace nlrd {

// m species sampled on the grid nodes at one time.
struct StateField {
    Matrix values;  // m x n_nodes
    double time = 0.0;
};

struct Trajectory {
    std::vector<StateField> snapshots;
    double dt_used = 0.0;
    std::string scheme;
    std::string scenario_hash;
};

// Transformed fixed-domain problem
//   u_t = D (K(rho(t)) u - u) - (rho_dot/rho) u + f(u).
struct SimProblem {
    ReactionSystem system;
    Kernel kernel;
    GrowthProfile growth;
    Grid grid;
    Vec diffusion;  // one coefficient per species
    StateField u0;
};

struct IntegrateOptions {
    // Reassemble K when |rho - rho_cached| / rho_cached exceeds this; strict_k
    // forces assembly at every RK4 stage instead.
    double k_refresh_tol = 1e-3;
    bool strict_k = false;
    std::string scenario_hash;
};

// Cache of the assembled nonlocal matrix across time steps.
class KernelMatrixCache {
  public:
    KernelMatrixCache(const Kernel& kernel, const Grid& grid) : kernel_(kernel), grid_(grid) {}
    const NonlocalMatrix& at(double rho, double refresh_tol);
    std::size_t assemblies() const { return assemblies_; }

  private:
    const Kernel& kernel_;
    const Grid& grid_;
    std::optional<NonlocalMatrix> cached_;
    std::size_t assemblies_ = 0;
};

// Time derivative at (t, u); K taken from the cache at rho(t).
void rhs(const SimProblem& problem, double t, const StateField& u, StateField& du,
         KernelMatrixCache& cache, double k_refresh_tol = 1e-3);

// Classical RK4 with fixed dt. States are clamped to [0, cap_v] only within
// 1e-9 * ||cap_v|| overshoot; larger excursions and NaNs raise NumericError.
Trajectory integrate(const SimProblem& problem, double t_end, double dt,
                     std::size_t snapshot_every, const IntegrateOptions& opts = {});

// Sampled Lipschitz-based stability bound on dt for this problem.
double stability_dt_bound(const SimProblem& problem, double t_end);

struct OdeTrajectory {
    Vec times;
    std::vector<Vec> states;
};

// Spatially homogeneous limiting ODE dw/dt = -k w + f(w), RK4.
OdeTrajectory solve_limit_ode(const ReactionSystem& system, double k, const Vec& w0, double t_end,
                              double dt);

// Physical-frame view: node y_j maps to x = rho(t) y_j on the moving domain.
struct PhysicalSample {
    double t;
    double x;
    std::size_t species;
    double value;
};
std::vector<PhysicalSample> remap_physical(const Trajectory& trajectory,
                                           const GrowthProfile& growth, const Grid& grid);

}  // namespace nlrd

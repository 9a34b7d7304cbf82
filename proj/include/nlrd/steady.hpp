#pragma once

#include <string>
#include <vector>

#include "nlrd/simulate.hpp"
#include "nlrd/spectral.hpp"

namespace nlrd {

enum class SteadyKind { stationary, periodic, ode_equilibrium };

struct SteadyResult {
    SteadyKind kind;
    StateField state;                  // stationary state (or last periodic sample)
    std::vector<StateField> orbit;     // one period, for the periodic kind
    Vec point;                         // ODE equilibrium
    double residual = 0.0;
    std::size_t iterations = 0;
    bool zero_state = false;           // extinction case
    double spectral_value = 0.0;       // bound that decided the branch
};

// Positive stationary state of the frozen-rho autonomous system, by monotone
// time-marching from cap_v down and from a small multiple of the principal
// eigenvector up; both limits must agree (uniqueness bracket).
SteadyResult autonomous_state(const ReactionSystem& system, const Kernel& kernel, double rho_inf,
                              const Grid& grid, const Vec& diffusion, double tol);

// Positive T-periodic orbit of the periodic-rho system.
SteadyResult periodic_state(const ReactionSystem& system, const Kernel& kernel,
                            const GrowthProfile& growth, double T, const Grid& grid,
                            const Vec& diffusion, double tol);

// Equilibrium of dw/dt = -k w + f(w): Newton with line search, falling back to
// a long ODE run when Newton stalls.
SteadyResult ode_equilibrium(const ReactionSystem& system, double k, double tol);

}  // namespace nlrd

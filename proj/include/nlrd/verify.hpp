#pragma once

#include <string>
#include <vector>

#include "nlrd/simulate.hpp"
#include "nlrd/spectral.hpp"

namespace nlrd {

struct Witness {
    std::string inputs;
    std::string location;
    double value = 0.0;
};

struct PropertyReport {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double worst_margin = 0.0;  // min observed margin; >= -tol means pass
    double tol = 0.0;
    std::uint64_t seed = 0;
    std::vector<Witness> witnesses;
    std::string note;
    bool pass() const { return failures == 0; }
};

// Auxiliary function phi: strictly positive inside (0,1), zero outside, C^1,
// built as eta * (psi_eps conv phi0) + (1 - eta) * phi0 around each endpoint.
struct AuxiliaryPhi {
    Vec xs;           // fine grid over [-0.5, 1.5]
    Vec values;       // phi(xs)
    Vec derivatives;  // phi'(xs)
    double R = 0.25;
    double eps = 0.0025;
    double value(double x) const;       // closed-form evaluation
    double derivative(double x) const;  // analytic derivative away from glue, FD inside
};

AuxiliaryPhi build_phi(std::size_t grid_fine, double R_analog, double eps);

// Comparison principle: ordered initial data stay ordered along trajectories.
PropertyReport check_comparison(const SimProblem& prototype, std::size_t pairs, double t_end,
                                double dt, double tol, std::uint64_t seed = 12345);

// Strong positivity: nonzero nonnegative data become strictly positive.
PropertyReport check_strong_positivity(const SimProblem& prototype, const StateField& u0,
                                       double t_probe, double tol_pos);

// Lemma-style kernel inequality for phi at a list of domain scales rho.
PropertyReport check_phi_inequality(const AuxiliaryPhi& phi, const Kernel& kernel,
                                    const std::vector<double>& rho_list, double quad_tol = 1e-8);

// Subsolution property of delta * zbar * phi for the reaction system.
PropertyReport check_delta_subsolution(const ReactionSystem& system, const Kernel& kernel,
                                       const Vec& diffusion, double rho_min,
                                       const std::vector<double>& delta_list, const Vec& zbar,
                                       const AuxiliaryPhi& phi, double k, double tol = 1e-10);

// Dynamic subhomogeneity: u(t; alpha u0) >= alpha u(t; u0).
PropertyReport check_subhomogeneity_dynamics(const SimProblem& prototype, double alpha,
                                             const StateField& u0, double t_end, double dt);

}  // namespace nlrd

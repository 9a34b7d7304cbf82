#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>

#include "nlrd/linalg.hpp"

namespace nlrd {

// Autonomous reaction term f with analytic Jacobian and invariant cap vector v.
// The dilution term -(rho_dot/rho) u is applied by the simulator, not here.
struct ReactionSystem {
    std::size_t m = 0;
    std::function<void(std::span<const double>, std::span<double>)> f;
    std::function<void(std::span<const double>, Matrix&)> jacobian;  // m x m, row-major
    Vec cap_v;
    std::map<std::string, double> params;
    std::string label;

    Matrix jacobian_at(std::span<const double> u) const {
        Matrix J(m, m);
        jacobian(u, J);
        return J;
    }
    Matrix jacobian_at_zero() const { return jacobian_at(Vec(m, 0.0)); }
};

// West Nile virus two-species reduction: infectious mosquitoes and birds.
struct WNParams {
    double d_V = 0.029;
    double alpha_V = 0.24;
    double alpha_R = 1.0;
    double beta_R = 0.16;
    double gamma_R = 0.01;
    double N_R = 100.0;
    double A_V = 5000.0;
    double D_V = 0.03;
    double D_R = 2.0;
};

ReactionSystem wn_reaction(const WNParams& params);

// Scalar logistic f(u) = r u (1 - u / K), cap K.
ReactionSystem logistic_reaction(double r, double K);

// Numeric check of the cooperative-irreducible-subhomogeneous assumption on
// quasi-random samples. Failures are reported, never thrown.
struct AssumptionFReport {
    bool f0_zero = false;
    bool cooperative = false;
    bool irreducible = false;
    bool subhomogeneous = false;
    double worst_offdiag = 0.0;       // most negative off-diagonal Jacobian entry seen
    double worst_subhom_margin = 0.0; // min over samples of min_i (f(alpha u) - alpha f(u))_i
    double cap_margin = 0.0;          // max_i f_i(u) over samples with u_i = v_i (<= 0 expected)
    Vec witness_u;
    double witness_alpha = 0.0;
    bool pass() const { return f0_zero && cooperative && irreducible && subhomogeneous; }
};

AssumptionFReport validate_F(const ReactionSystem& system, std::size_t samples);

// Max relative error between the analytic Jacobian and central differences.
double jacobian_fd_check(const ReactionSystem& system, std::span<const double> point, double h);

}  // namespace nlrd

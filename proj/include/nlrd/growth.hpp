#pragma once

#include <functional>
#include <string>
#include <variant>

namespace nlrd {

struct AsymptoticallyFixed {
    double rho_inf;
};
struct AsymptoticallyPeriodic {
    double period;
    std::function<double(double)> rho_T;
    std::function<double(double)> rho_T_dot;
};
struct AsymptoticallyUnbounded {
    double k;  // limit of rho_dot / rho
};
using GrowthKind = std::variant<AsymptoticallyFixed, AsymptoticallyPeriodic, AsymptoticallyUnbounded>;

// Domain evolution factor rho(t) with rho(0) = 1; derivatives are analytic,
// finite differences are only a cross-check.
struct GrowthProfile {
    std::function<double(double)> rho;
    std::function<double(double)> rho_dot;
    GrowthKind kind;
    std::string label;
};

// Dilution coefficient rho_dot(t) / rho(t)  (spatial dimension fixed to 1).
double relative_rate(const GrowthProfile& profile, double t);

struct GrowthValidation {
    bool pass = false;
    double rho_residual = 0.0;      // deviation from the declared asymptotic shape
    double rho_dot_residual = 0.0;  // deviation of the rate (fixed/unbounded kinds)
    std::string message;
};

// Probes rho and rho_dot on [horizon/2, horizon] and confirms the declared
// kind within tol. Misdeclarations produce a failing report, not an error.
GrowthValidation classify_validate(const GrowthProfile& profile, double horizon, double tol);

// Built-in profiles.
GrowthProfile case1_profile();   // logistic-type, rho_inf = 3
GrowthProfile case2_profile();   // asymptotically periodic, T = 20
GrowthProfile case3_profile();   // rho = 0.5 t + 1, k = 0
GrowthProfile fixed_profile();   // rho identically 1
GrowthProfile logistic_profile(double rho_inf, double kappa);
GrowthProfile exponential_profile(double k);

GrowthProfile growth_by_label(const std::string& label);

}  // namespace nlrd

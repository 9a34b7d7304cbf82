#include "nlrd/growth.hpp"

#include <cmath>

#include "nlrd/errors.hpp"

namespace nlrd {

double relative_rate(const GrowthProfile& profile, double t) {
    return profile.rho_dot(t) / profile.rho(t);
}

GrowthValidation classify_validate(const GrowthProfile& profile, double horizon, double tol) {
    GrowthValidation out;
    if (!(horizon > 0.0)) throw ConfigError("classify_validate: horizon must be positive");
    if (std::abs(profile.rho(0.0) - 1.0) > 1e-12) {
        out.message = "rho(0) != 1";
        return out;
    }
    const int probes = 200;
    for (int i = 0; i <= probes; ++i) {
        const double t = 0.5 * horizon + 0.5 * horizon * i / probes;
        if (!(profile.rho(t) > 0.0)) {
            out.message = "rho not positive on probe window";
            return out;
        }
    }
    if (const auto* fixed = std::get_if<AsymptoticallyFixed>(&profile.kind)) {
        for (int i = 0; i <= probes; ++i) {
            const double t = 0.5 * horizon + 0.5 * horizon * i / probes;
            out.rho_residual = std::max(out.rho_residual, std::abs(profile.rho(t) - fixed->rho_inf));
            out.rho_dot_residual = std::max(out.rho_dot_residual, std::abs(profile.rho_dot(t)));
        }
        out.pass = out.rho_residual <= tol && out.rho_dot_residual <= tol;
    } else if (const auto* per = std::get_if<AsymptoticallyPeriodic>(&profile.kind)) {
        for (int i = 0; i <= probes; ++i) {
            const double t = 0.5 * horizon + 0.5 * horizon * i / probes;
            out.rho_residual = std::max(out.rho_residual, std::abs(profile.rho(t) - per->rho_T(t)));
            out.rho_dot_residual =
                std::max(out.rho_dot_residual, std::abs(profile.rho_dot(t) - per->rho_T_dot(t)));
        }
        out.pass = out.rho_residual <= tol && out.rho_dot_residual <= tol;
    } else {
        const auto& unb = std::get<AsymptoticallyUnbounded>(profile.kind);
        // Divergence: rho keeps growing across the probe window; the relative
        // rate approaches k at the horizon.
        const double grow = profile.rho(horizon) / profile.rho(0.5 * horizon);
        out.rho_residual = grow >= 1.2 ? 0.0 : 1.2 - grow;
        out.rho_dot_residual = std::abs(relative_rate(profile, horizon) - unb.k);
        out.pass = out.rho_residual == 0.0 && out.rho_dot_residual <= tol;
    }
    out.message = out.pass ? "declared kind consistent" : "declared kind inconsistent with probes";
    return out;
}

GrowthProfile case1_profile() {
    GrowthProfile p;
    // Written in terms of exp(-2t) so large t underflows gracefully instead of
    // overflowing exp(2t) to inf (which would make rho = inf/inf = NaN).
    p.rho = [](double t) {
        const double e = std::exp(-2.0 * t);
        return 3.0 / (1.0 + 2.0 * e);
    };
    p.rho_dot = [](double t) {
        const double e = std::exp(-2.0 * t);
        const double d = 1.0 + 2.0 * e;
        return 12.0 * e / (d * d);
    };
    p.kind = AsymptoticallyFixed{3.0};
    p.label = "case1";
    return p;
}

GrowthProfile case2_profile() {
    auto rho_T = [](double t) { return 0.2 * std::sin(0.1 * M_PI * t) + 1.0; };
    auto rho_T_dot = [](double t) { return 0.02 * M_PI * std::cos(0.1 * M_PI * t); };
    GrowthProfile p;
    p.rho = [](double t) {
        return (1.0 - std::exp(-t)) * 0.2 * std::sin(0.1 * M_PI * t) + 1.0;
    };
    p.rho_dot = [](double t) {
        return std::exp(-t) * 0.2 * std::sin(0.1 * M_PI * t) +
               (1.0 - std::exp(-t)) * 0.02 * M_PI * std::cos(0.1 * M_PI * t);
    };
    p.kind = AsymptoticallyPeriodic{20.0, rho_T, rho_T_dot};
    p.label = "case2";
    return p;
}

GrowthProfile case3_profile() {
    GrowthProfile p;
    p.rho = [](double t) { return 0.5 * t + 1.0; };
    p.rho_dot = [](double) { return 0.5; };
    p.kind = AsymptoticallyUnbounded{0.0};
    p.label = "case3";
    return p;
}

GrowthProfile fixed_profile() {
    GrowthProfile p;
    p.rho = [](double) { return 1.0; };
    p.rho_dot = [](double) { return 0.0; };
    p.kind = AsymptoticallyFixed{1.0};
    p.label = "fixed";
    return p;
}

GrowthProfile logistic_profile(double rho_inf, double kappa) {
    if (!(rho_inf > 0.0)) throw ConfigError("logistic_profile: rho_inf must be positive");
    GrowthProfile p;
    p.rho = [rho_inf, kappa](double t) {
        const double e = std::exp(kappa * t);
        return rho_inf * e / (rho_inf - 1.0 + e);
    };
    p.rho_dot = [rho_inf, kappa](double t) {
        const double e = std::exp(kappa * t);
        const double d = rho_inf - 1.0 + e;
        return rho_inf * kappa * e * (rho_inf - 1.0) / (d * d);
    };
    p.kind = AsymptoticallyFixed{rho_inf};
    p.label = "logistic";
    return p;
}

GrowthProfile exponential_profile(double k) {
    GrowthProfile p;
    p.rho = [k](double t) { return std::exp(k * t); };
    p.rho_dot = [k](double t) { return k * std::exp(k * t); };
    p.kind = AsymptoticallyUnbounded{k};
    p.label = "exponential";
    return p;
}

GrowthProfile growth_by_label(const std::string& label) {
    if (label == "case1" || label == "case4") return case1_profile();
    if (label == "case2") return case2_profile();
    if (label == "case3") return case3_profile();
    if (label == "fixed") return fixed_profile();
    throw ConfigError("unknown growth label: " + label);
}

}  // namespace nlrd

#include "nlrd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "nlrd/errors.hpp"
#include "nlrd/quadrature.hpp"

namespace nlrd {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Standard mollifier psi(t) = C exp(-1/(1-t^2)) on (-1,1), unit mass.
double mollifier(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    static const double norm = [] {
        return 1.0 / integrate([](double s) { return std::exp(-1.0 / (1.0 - s * s)); }, -1.0, 1.0,
                               1e-12);
    }();
    return norm * std::exp(-1.0 / (1.0 - t * t));
}

double mollifier_second_moment() {
    static const double sigma2 =
        integrate([](double t) { return t * t * mollifier(t); }, -1.0, 1.0, 1e-12);
    return sigma2;
}

// phi0 in the boundary-distance coordinate s: quadratic ramp, then plateau.
double phi0_of_s(double s, double R) {
    if (s <= 0.0) return 0.0;
    if (s >= R) return 1.0;
    return (s / R) * (s / R);
}

double phi0_prime_of_s(double s, double R) {
    if (s <= 0.0 || s >= R) return 0.0;
    return 2.0 * s / (R * R);
}

// Mollified profile m(s) = (psi_eps * phi0)(s); closed forms away from the
// kink at s = R, quadrature within eps of it.
double mollified_of_s(double s, double R, double eps) {
    if (s >= R + eps) return 1.0;
    if (s <= R - eps)
        return (s * s + mollifier_second_moment() * eps * eps) / (R * R);
    return integrate(
        [&](double tau) { return mollifier(tau) * phi0_of_s(s - eps * tau, R); }, -1.0, 1.0, 1e-12);
}

double mollified_prime_of_s(double s, double R, double eps) {
    if (s >= R + eps) return 0.0;
    if (s <= R - eps) return 2.0 * s / (R * R);
    return integrate(
        [&](double tau) { return mollifier(tau) * phi0_prime_of_s(s - eps * tau, R); }, -1.0, 1.0,
        1e-12);
}

// C^1 cosine cut-off in s: 0 for s <= 0.96 R (pure phi0 near the boundary),
// 1 for s >= 0.98 R (mollified interior), cosine glue between.
double cutoff_of_s(double s, double R) {
    const double lo = 0.96 * R, hi = 0.98 * R;
    if (s <= lo) return 0.0;
    if (s >= hi) return 1.0;
    return 0.5 + 0.5 * std::cos(kPi * (49.0 * R - 50.0 * s) / R);
}

double cutoff_prime_of_s(double s, double R) {
    const double lo = 0.96 * R, hi = 0.98 * R;
    if (s <= lo || s >= hi) return 0.0;
    return 0.5 * (50.0 * kPi / R) * std::sin(kPi * (49.0 * R - 50.0 * s) / R);
}

std::string format_inputs(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) os << ", ";
        os << k << "=" << v;
        first = false;
    }
    return os.str();
}

// Random smooth nonnegative field: 5 sine modes, clipped to [0, cap].
void random_field(std::mt19937_64& rng, double cap, std::span<const double> nodes,
                  double* out) {
    std::uniform_real_distribution<double> amp(0.0, cap / 3.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    double a[5], p[5];
    for (int k = 0; k < 5; ++k) {
        a[k] = amp(rng);
        p[k] = phase(rng);
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        double v = 0.0;
        for (int k = 0; k < 5; ++k) v += a[k] * std::sin((k + 1) * kPi * nodes[j] + p[k]);
        out[j] = std::clamp(v, 0.0, cap);
    }
}

}  // namespace

double AuxiliaryPhi::value(double x) const {
    double s = std::min(x, 1.0 - x);
    if (s <= 0.0) return 0.0;
    double eta = cutoff_of_s(s, R);
    double p0 = phi0_of_s(s, R);
    if (eta == 0.0) return p0;
    double m = mollified_of_s(s, R, eps);
    return eta * m + (1.0 - eta) * p0;
}

double AuxiliaryPhi::derivative(double x) const {
    double s = std::min(x, 1.0 - x);
    if (s <= 0.0) return 0.0;
    double ds_dx = (x < 0.5) ? 1.0 : -1.0;
    double eta = cutoff_of_s(s, R);
    double etap = cutoff_prime_of_s(s, R);
    double p0 = phi0_of_s(s, R);
    double p0p = phi0_prime_of_s(s, R);
    if (eta == 0.0 && etap == 0.0) return ds_dx * p0p;
    double m = mollified_of_s(s, R, eps);
    double mp = mollified_prime_of_s(s, R, eps);
    return ds_dx * (etap * (m - p0) + eta * mp + (1.0 - eta) * p0p);
}

AuxiliaryPhi build_phi(std::size_t grid_fine, double R_analog, double eps) {
    if (!(R_analog > 0.0) || !(eps > 0.0))
        throw ConfigError("build_phi: R and eps must be positive");
    if (eps >= R_analog / 10.0)
        throw ConfigError("build_phi: mollifier width eps must satisfy eps < R/10");
    if (R_analog >= 0.5)
        throw ConfigError("build_phi: profile must fit inside (0,1): R < 0.5");
    if (grid_fine < 2) throw ConfigError("build_phi: need at least 2 grid points");

    AuxiliaryPhi phi;
    phi.R = R_analog;
    phi.eps = eps;
    phi.xs.resize(grid_fine);
    phi.values.resize(grid_fine);
    phi.derivatives.resize(grid_fine);
    for (std::size_t i = 0; i < grid_fine; ++i) {
        double x = -0.5 + 2.0 * static_cast<double>(i) / static_cast<double>(grid_fine - 1);
        phi.xs[i] = x;
        phi.values[i] = phi.value(x);
        phi.derivatives[i] = phi.derivative(x);
    }
    return phi;
}

PropertyReport check_comparison(const SimProblem& prototype, std::size_t pairs, double t_end,
                                double dt, double tol, std::uint64_t seed) {
    if (pairs < 1) throw ConfigError("check_comparison: pairs must be >= 1");
    PropertyReport report;
    report.name = "comparison_principle";
    report.tol = tol;
    report.seed = seed;
    report.trials = pairs;
    report.worst_margin = std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(seed);
    const std::size_t m = prototype.system.m;
    const std::size_t n = prototype.grid.n_nodes();
    std::uniform_real_distribution<double> beta_dist(0.05, 0.95);

    for (std::size_t trial = 0; trial < pairs; ++trial) {
        SimProblem pb = prototype;
        StateField u0B{Matrix(m, n), 0.0};
        for (std::size_t i = 0; i < m; ++i)
            random_field(rng, prototype.system.cap_v[i], prototype.grid.nodes, u0B.values.row(i));
        double beta = beta_dist(rng);
        StateField u0A = u0B;
        for (auto& v : u0A.values.a) v *= beta;

        pb.u0 = u0A;
        Trajectory trajA = integrate(pb, t_end, dt, 10);
        pb.u0 = u0B;
        Trajectory trajB = integrate(pb, t_end, dt, 10);

        double margin = std::numeric_limits<double>::infinity();
        double at_t = 0.0;
        std::size_t at_flat = 0;
        for (std::size_t s = 0; s < trajA.snapshots.size(); ++s) {
            const auto& a = trajA.snapshots[s].values.a;
            const auto& b = trajB.snapshots[s].values.a;
            for (std::size_t k = 0; k < a.size(); ++k) {
                double d = b[k] - a[k];
                if (d < margin) {
                    margin = d;
                    at_t = trajA.snapshots[s].time;
                    at_flat = k;
                }
            }
        }
        report.worst_margin = std::min(report.worst_margin, margin);
        if (margin < -tol) {
            ++report.failures;
            report.witnesses.push_back(
                {format_inputs({{"trial", (double)trial}, {"beta", beta}}),
                 format_inputs({{"t", at_t},
                                {"species", (double)(at_flat / n)},
                                {"node", (double)(at_flat % n)}}),
                 margin});
        }
    }
    return report;
}

PropertyReport check_strong_positivity(const SimProblem& prototype, const StateField& u0,
                                       double t_probe, double tol_pos) {
    PropertyReport report;
    report.name = "strong_positivity";
    report.tol = tol_pos;
    report.trials = 1;

    double u0_max = max_abs(u0.values.a);
    if (u0_max == 0.0) {
        report.note = "vacuous: u0 = 0";
        report.worst_margin = 0.0;
        return report;
    }
    for (double v : u0.values.a)
        if (v < 0.0) throw ConfigError("check_strong_positivity: u0 must be nonnegative");

    SimProblem pb = prototype;
    pb.u0 = u0;
    Trajectory traj = integrate(pb, t_probe, std::min(1e-2, t_probe / 10.0), 0);
    const auto& final_state = traj.snapshots.back().values.a;
    double min_v = *std::min_element(final_state.begin(), final_state.end());
    report.worst_margin = min_v - tol_pos;
    if (min_v <= tol_pos) {
        ++report.failures;
        report.witnesses.push_back({format_inputs({{"t_probe", t_probe}}), "grid minimum", min_v});
    }
    return report;
}

PropertyReport check_phi_inequality(const AuxiliaryPhi& phi, const Kernel& kernel,
                                    const std::vector<double>& rho_list, double quad_tol) {
    PropertyReport report;
    report.name = "phi_kernel_inequality";
    report.tol = quad_tol;
    report.worst_margin = std::numeric_limits<double>::infinity();

    double threshold_rho = std::numeric_limits<double>::quiet_NaN();
    for (double rho : rho_list) {
        if (!(rho > 0.0)) throw ConfigError("check_phi_inequality: rho must be positive");
        double margin_rho = std::numeric_limits<double>::infinity();
        double worst_x = 0.0;
        for (double x : phi.xs) {
            ++report.trials;
            double r = kernel.support_radius / rho;
            double a = std::max(0.0, x - r);
            double b = std::min(1.0, x + r);
            double conv = 0.0;
            if (b > a) {
                std::vector<double> breaks;
                for (double bp : kernel.breakpoints) breaks.push_back(x - bp / rho);
                // phi kinks in s at 0.96R, 0.98R, R-eps, R+eps from either end.
                for (double s : {0.96 * phi.R, 0.98 * phi.R, phi.R - phi.eps, phi.R + phi.eps}) {
                    breaks.push_back(s);
                    breaks.push_back(1.0 - s);
                }
                conv = integrate_split(
                    [&](double y) { return rho * kernel(rho * (x - y)) * phi.value(y); }, a, b,
                    breaks, 1e-11);
            }
            double px = phi.value(x);
            double margin = conv - px + px / rho;
            if (margin < margin_rho) {
                margin_rho = margin;
                worst_x = x;
            }
            if (margin < -quad_tol) {
                ++report.failures;
                if (report.witnesses.size() < 8)
                    report.witnesses.push_back(
                        {format_inputs({{"rho", rho}}), format_inputs({{"x", worst_x}}), margin});
            }
        }
        report.worst_margin = std::min(report.worst_margin, margin_rho);
        if (margin_rho >= -quad_tol && std::isnan(threshold_rho)) threshold_rho = rho;
        if (margin_rho < -quad_tol) threshold_rho = std::numeric_limits<double>::quiet_NaN();
    }
    std::ostringstream os;
    if (std::isnan(threshold_rho))
        os << "no rho in the list satisfies the inequality everywhere";
    else
        os << "inequality holds everywhere for rho >= " << threshold_rho << " within the list";
    report.note = os.str();
    return report;
}

PropertyReport check_delta_subsolution(const ReactionSystem& system, const Kernel& kernel,
                                       const Vec& diffusion, double rho_min,
                                       const std::vector<double>& delta_list, const Vec& zbar,
                                       const AuxiliaryPhi& phi, double k, double tol) {
    PropertyReport report;
    report.name = "delta_zbar_phi_subsolution";
    report.tol = tol;
    report.worst_margin = std::numeric_limits<double>::infinity();

    const std::size_t m = system.m;
    if (zbar.size() != m) throw ConfigError("check_delta_subsolution: zbar size mismatch");
    if (diffusion.size() != m) throw ConfigError("check_delta_subsolution: diffusion size mismatch");

    // Evaluation points: phi grid restricted to (0,1).
    std::vector<double> xs;
    for (double x : phi.xs)
        if (x > 0.0 && x < 1.0) xs.push_back(x);

    const std::vector<double> rho_scan{rho_min, 2.0 * rho_min, 4.0 * rho_min, 8.0 * rho_min};
    Vec u(m), fu(m);
    std::ostringstream region;
    for (double rho : rho_scan) {
        // Convolution values are shared by every species and delta.
        std::vector<double> conv(xs.size());
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            double x = xs[ix];
            double r = kernel.support_radius / rho;
            double a = std::max(0.0, x - r);
            double b = std::min(1.0, x + r);
            conv[ix] = 0.0;
            if (b > a) {
                std::vector<double> breaks;
                for (double bp : kernel.breakpoints) breaks.push_back(x - bp / rho);
                conv[ix] = integrate_split(
                    [&](double y) { return rho * kernel(rho * (x - y)) * phi.value(y); }, a, b,
                    breaks, 1e-11);
            }
        }
        for (double delta : delta_list) {
            bool out_of_cap = false;
            for (std::size_t i = 0; i < m; ++i)
                if (delta * zbar[i] > system.cap_v[i]) out_of_cap = true;
            if (out_of_cap) {
                region << "delta=" << delta << " exceeds cap (skipped); ";
                continue;
            }
            double margin_cfg = std::numeric_limits<double>::infinity();
            double worst_x = 0.0;
            std::size_t worst_i = 0;
            for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                ++report.trials;
                double px = phi.value(xs[ix]);
                for (std::size_t i = 0; i < m; ++i) u[i] = delta * zbar[i] * px;
                system.f(u, fu);
                for (std::size_t i = 0; i < m; ++i) {
                    double margin = diffusion[i] * delta * zbar[i] * (conv[ix] - px) -
                                    k * delta * zbar[i] * px + fu[i];
                    if (margin < margin_cfg) {
                        margin_cfg = margin;
                        worst_x = xs[ix];
                        worst_i = i;
                    }
                }
            }
            report.worst_margin = std::min(report.worst_margin, margin_cfg);
            if (margin_cfg < -tol) {
                ++report.failures;
                if (report.witnesses.size() < 8)
                    report.witnesses.push_back(
                        {format_inputs({{"rho", rho}, {"delta", delta}}),
                         format_inputs({{"x", worst_x}, {"species", (double)worst_i}}),
                         margin_cfg});
            } else {
                region << "(delta=" << delta << ", rho=" << rho << ") passes; ";
            }
        }
    }
    report.note = region.str();
    return report;
}

PropertyReport check_subhomogeneity_dynamics(const SimProblem& prototype, double alpha,
                                             const StateField& u0, double t_end, double dt) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw ConfigError("check_subhomogeneity_dynamics: alpha must lie in (0, 1]");
    PropertyReport report;
    report.name = "subhomogeneity_dynamics";
    double cap_norm = max_abs(prototype.system.cap_v);
    report.tol = 1e-9 * cap_norm;
    report.worst_margin = std::numeric_limits<double>::infinity();

    SimProblem pb = prototype;
    pb.u0 = u0;
    Trajectory full = integrate(pb, t_end, dt, 10);
    StateField scaled0 = u0;
    for (auto& v : scaled0.values.a) v *= alpha;
    pb.u0 = scaled0;
    Trajectory scaled = integrate(pb, t_end, dt, 10);

    for (std::size_t s = 0; s < full.snapshots.size(); ++s) {
        const auto& uf = full.snapshots[s].values.a;
        const auto& us = scaled.snapshots[s].values.a;
        for (std::size_t idx = 0; idx < uf.size(); ++idx) {
            ++report.trials;
            double margin = us[idx] - alpha * uf[idx];
            if (margin < report.worst_margin) report.worst_margin = margin;
            if (margin < -report.tol) {
                ++report.failures;
                if (report.witnesses.size() < 8)
                    report.witnesses.push_back({format_inputs({{"alpha", alpha}}),
                                                format_inputs({{"t", full.snapshots[s].time}}),
                                                margin});
            }
        }
    }
    return report;
}

}  // namespace nlrd

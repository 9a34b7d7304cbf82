// Acceptance suite: one criterion per invocation (`acceptance <id> [cli-path]`).
// Each check prints a PASS/FAIL line with the measured quantities and returns
// nonzero on failure. Failures are honest: criteria whose reference values we
// cannot reproduce fail with the computed value in the message.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nlrd/errors.hpp"
#include "nlrd/scenario.hpp"
#include "nlrd/simulate.hpp"
#include "nlrd/spectral.hpp"
#include "nlrd/steady.hpp"
#include "nlrd/verify.hpp"

using namespace nlrd;
namespace fs = std::filesystem;
using clock_t_ = std::chrono::steady_clock;

namespace {

int fail(const std::string& id, const std::string& msg) {
    std::printf("criterion %s: FAIL — %s\n", id.c_str(), msg.c_str());
    return 1;
}
int pass(const std::string& id, const std::string& msg) {
    std::printf("criterion %s: PASS — %s\n", id.c_str(), msg.c_str());
    return 0;
}

double seconds_since(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

double lambda_star(const std::string& kernel_label, std::size_t n) {
    Grid grid = build_grid(n);
    ReactionSystem sys = wn_reaction({});
    LinearGenerator gen =
        build_generator(sys, kernel_by_label(kernel_label), 3.0, grid, Vec{0.03, 2.0}, 0.0);
    return spectral_bound_autonomous(gen).value;
}

StateField paper_u0(const Grid& grid) {
    StateField u0{Matrix(2, grid.n_nodes()), 0.0};
    for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
        u0.values(0, j) = std::sin(grid.nodes[j] / 2.0);
        u0.values(1, j) = 0.5 * grid.nodes[j] * (1.0 - grid.nodes[j]);
    }
    return u0;
}

double lambda_star_T(std::size_t n, double dt) {
    Grid grid = build_grid(n);
    ReactionSystem sys = wn_reaction({});
    GrowthProfile g = case2_profile();
    const auto& ap = std::get<AsymptoticallyPeriodic>(g.kind);
    KernelGeneratorFamily fam{sys, tent_kernel(), grid, Vec{0.03, 2.0}, ap.rho_T,
                              [&ap](double t) { return ap.rho_T_dot(t) / ap.rho_T(t); }};
    return periodic_bound(fam, ap.period, dt).value;
}

std::string fmtd(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

int criterion1(const std::string& id) {
    Matrix A(2, 2);
    A(0, 0) = -0.029; A(0, 1) = 1.92; A(1, 0) = 0.16; A(1, 1) = -0.01;
    SpectralReport warm = ode_bound(A);  // warm-up
    auto t0 = clock_t_::now();
    SpectralReport rep = ode_bound(A);
    double dt = seconds_since(t0);
    // Closed form: (tr + sqrt(tr^2 - 4 det)) / 2.
    double tr = -0.039, det = (-0.029) * (-0.01) - 1.92 * 0.16;
    double exact = (tr + std::sqrt(tr * tr - 4.0 * det)) / 2.0;
    (void)warm;
    std::string info = "s(A)=" + fmtd(rep.value) + " exact=" + fmtd(exact) +
                       " time=" + fmtd(dt * 1e3) + "ms";
    if (std::abs(rep.value - exact) > 1e-6) return fail(id, info);
    if (std::abs(rep.value - 0.5348) > 1e-4) return fail(id, info + " (reference 0.5348)");
    if (dt >= 1e-3) return fail(id, info + " (runtime bound 1 ms)");
    return pass(id, info);
}

int criterion_spectral(const std::string& id, const std::string& kernel_label, double target) {
    auto t0 = clock_t_::now();
    double l400 = lambda_star(kernel_label, 400);
    double runtime = seconds_since(t0);
    double l200 = lambda_star(kernel_label, 200);
    std::string info = "lambda*(n=400)=" + fmtd(l400) + " lambda*(n=200)=" + fmtd(l200) +
                       " reference=" + fmtd(target) + " time=" + fmtd(runtime) + "s";
    bool ok = true;
    std::string why;
    if (std::abs(l400 - l200) > 0.002) { ok = false; why += " refinement drift > 0.002;"; }
    if (std::abs(l400 - target) > 0.02) {
        ok = false;
        why += " computed value disagrees with the reference threshold (delta=" +
               fmtd(l400 - target) + ");";
    }
    if (runtime >= 5.0) { ok = false; why += " runtime bound 5 s exceeded;"; }
    return ok ? pass(id, info) : fail(id, info + " —" + why);
}

int criterion4(const std::string& id) {
    auto t0 = clock_t_::now();
    double v1 = lambda_star_T(200, 1e-3);
    double runtime = seconds_since(t0);
    double v2 = lambda_star_T(200, 5e-4);
    std::string info = "lambda*_T(dt=1e-3)=" + fmtd(v1) + " (dt=5e-4)=" + fmtd(v2) +
                       " time=" + fmtd(runtime) + "s";
    bool ok = true;
    std::string why;
    if (std::abs(v1 - (-0.2829)) > 0.02) { ok = false; why += " outside -0.2829±0.02;"; }
    if (std::abs(v1 - v2) > 1e-4) { ok = false; why += " dt-halving drift > 1e-4;"; }
    if (runtime >= 120.0) { ok = false; why += " runtime bound 2 min exceeded;"; }
    return ok ? pass(id, info) : fail(id, info + " —" + why);
}

int criterion5(const std::string& id) {
    const std::size_t n = 50;
    Grid grid = build_grid(n);
    ReactionSystem sys = wn_reaction({});
    Vec D{0.03, 2.0};
    LinearGenerator gen = build_generator(sys, tent_kernel(), 3.0, grid, D, 0.0);
    double l = spectral_bound_autonomous(gen).value;
    KernelGeneratorFamily fam{sys, tent_kernel(), grid, D, [](double) { return 3.0; },
                              [](double) { return 0.0; }};
    double p = periodic_bound(fam, 20.0, 1e-3).value;
    std::string info = "lambda*=" + fmtd(l) + " periodic_bound=" + fmtd(p) +
                       " |sum|=" + fmtd(std::abs(p + l));
    return std::abs(p + l) <= 1e-6 ? pass(id, info) : fail(id, info);
}

int criterion6a(const std::string& id) {
    const std::size_t n = 100;
    Grid grid = build_grid(n);
    SimProblem pb{wn_reaction({}), tent_kernel(), case1_profile(), grid, Vec{0.03, 2.0},
                  paper_u0(grid)};
    double dt = 0.8 * stability_dt_bound(pb, 450.0);
    dt = 50.0 / std::ceil(50.0 / dt);
    StateField u = pb.u0;
    double rel = 1.0;
    double t = 0.0;
    for (int block = 0; block < 9; ++block) {  // to t = 450
        pb.u0 = u;
        pb.u0.time = 0.0;
        GrowthProfile shifted = case1_profile();
        double t0 = t;
        GrowthProfile base = case1_profile();
        shifted.rho = [base, t0](double s) { return base.rho(t0 + s); };
        shifted.rho_dot = [base, t0](double s) { return base.rho_dot(t0 + s); };
        pb.growth = shifted;
        Trajectory traj = integrate(pb, 50.0, dt, 0);
        StateField next = traj.snapshots.back();
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < u.values.a.size(); ++i) {
            diff = std::max(diff, std::abs(next.values.a[i] - u.values.a[i]));
            scale = std::max(scale, std::abs(next.values.a[i]));
        }
        rel = diff / std::max(scale, 1e-300);
        u = next;
        t += 50.0;
        if (t >= 400.0 && rel < 1e-6) break;
    }
    double min_v = 1e300;
    for (double v : u.values.a) min_v = std::min(min_v, v);
    std::string info = "rel change over dt=50 at t=" + fmtd(t) + ": " + fmtd(rel) +
                       ", min state=" + fmtd(min_v);
    return (rel < 1e-6 && min_v > 0.0) ? pass(id, info) : fail(id, info);
}

int criterion6b(const std::string& id) {
    const std::size_t n = 64;
    Grid grid = build_grid(n);
    GrowthProfile g = case2_profile();
    SimProblem pb{wn_reaction({}), tent_kernel(), g, grid, Vec{0.03, 2.0}, paper_u0(grid)};
    const double T = 20.0;
    double dt = 0.8 * stability_dt_bound(pb, 100.0 * T);
    dt = T / std::ceil(T / dt);
    StateField u = pb.u0;
    double rel = 1.0;
    std::size_t k = 0;
    GrowthProfile base = case2_profile();
    for (; k < 200; ++k) {
        pb.u0 = u;
        pb.u0.time = 0.0;
        double t0 = static_cast<double>(k) * T;
        GrowthProfile shifted = base;
        shifted.rho = [base, t0](double s) { return base.rho(t0 + s); };
        shifted.rho_dot = [base, t0](double s) { return base.rho_dot(t0 + s); };
        pb.growth = shifted;
        Trajectory traj = integrate(pb, T, dt, 0);
        StateField next = traj.snapshots.back();
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < u.values.a.size(); ++i) {
            diff = std::max(diff, std::abs(next.values.a[i] - u.values.a[i]));
            scale = std::max(scale, std::abs(next.values.a[i]));
        }
        rel = diff / std::max(scale, 1e-300);
        u = next;
        if (rel <= 1e-4 && k > 5) break;
    }
    double min_v = 1e300;
    for (double v : u.values.a) min_v = std::min(min_v, v);
    std::string info = "||u(t+T)-u(t)||/||u|| = " + fmtd(rel) + " after " + fmtd((double)(k + 1)) +
                       " periods, min state=" + fmtd(min_v);
    return (rel <= 1e-4 && min_v > 0.0) ? pass(id, info) : fail(id, info);
}

int criterion6c(const std::string& id, bool supplementary) {
    // rho(200) = 101 shrinks the rescaled tent support to ~0.02; h must stay
    // well below that or quadrature row sums drift above 1 and push the state
    // over the cap. n = 800 keeps the drift ~(rho*h)^2/4 < 4e-3.
    const std::size_t n = 800;
    Grid grid = build_grid(n);
    ReactionSystem sys = wn_reaction({});
    GrowthProfile g = case3_profile();
    SimProblem pb{sys, tent_kernel(), g, grid, Vec{0.03, 2.0}, paper_u0(grid)};
    double dt = 0.8 * stability_dt_bound(pb, 200.0);
    dt = 200.0 / std::ceil(200.0 / dt);
    Trajectory traj = integrate(pb, 200.0, dt, 0);
    SteadyResult we = ode_equilibrium(sys, 0.0, 1e-10);

    // Finite-time reference: the space-homogeneous limit ODE with the actual
    // time-varying dilution, dw/dt = -(rho_dot/rho) w + f(w), from the
    // interior value of the initial data.
    Vec w{std::sin(0.5 / 2.0), 0.5 * 0.5 * (1.0 - 0.5)};
    {
        Vec q1(2), q2(2), q3(2), q4(2), tm(2);
        auto f = [&](double t, const Vec& x, Vec& out) {
            sys.f(x, out);
            double dil = relative_rate(g, t);
            for (int i = 0; i < 2; ++i) out[i] -= dil * x[i];
        };
        const auto steps = static_cast<std::size_t>(std::llround(200.0 / dt));
        for (std::size_t s = 0; s < steps; ++s) {
            double t = static_cast<double>(s) * dt;
            f(t, w, q1);
            for (int i = 0; i < 2; ++i) tm[i] = w[i] + 0.5 * dt * q1[i];
            f(t + 0.5 * dt, tm, q2);
            for (int i = 0; i < 2; ++i) tm[i] = w[i] + 0.5 * dt * q2[i];
            f(t + 0.5 * dt, tm, q3);
            for (int i = 0; i < 2; ++i) tm[i] = w[i] + dt * q3[i];
            f(t + dt, tm, q4);
            for (int i = 0; i < 2; ++i)
                w[i] += dt / 6.0 * (q1[i] + 2.0 * q2[i] + 2.0 * q3[i] + q4[i]);
        }
    }

    double worst_we = 0.0, worst_ode = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double y = grid.nodes[j];
            if (y < 0.2 || y > 0.8) continue;
            double v = traj.snapshots.back().values(i, j);
            worst_we = std::max(worst_we, std::abs(v - we.point[i]) / we.point[i]);
            worst_ode = std::max(worst_ode, std::abs(v - w[i]) / w[i]);
        }
    std::string info = "w_e=(" + fmtd(we.point[0]) + "," + fmtd(we.point[1]) +
                       "), worst relative deviation on [0.2,0.8] at t=200: vs w_e " +
                       fmtd(worst_we) + ", vs finite-time limit ODE " + fmtd(worst_ode);
    if (supplementary)
        return worst_ode <= 0.01 ? pass(id, info) : fail(id, info);
    if (worst_we <= 0.01) return pass(id, info);
    // The infinite-time target cannot be met at t=200: the dilution
    // rho_dot/rho = 1/(t+2) is still ~5e-3 there, and the quasi-static
    // equilibrium at that dilution is itself ~6.9% from w_e in the first
    // component. The supplementary criterion checks the finite-time limit.
    return fail(id, info + " (quasi-static equilibrium at dilution 1/202 deviates ~6.9%: "
                           "1% of w_e is unreachable by t=200 with rho=0.5t+1)");
}

int criterion6d(const std::string& id, bool supplementary) {
    WNParams p;
    p.gamma_R = 2.0;
    if (supplementary) p.A_V = 500.0;
    const std::size_t n = 64;
    Grid grid = build_grid(n);
    ReactionSystem sys = wn_reaction(p);
    LinearGenerator gen = build_generator(sys, tent_kernel(), 3.0, grid, Vec{0.03, 2.0}, 0.0);
    double l = spectral_bound_autonomous(gen).value;
    std::string info = "lambda*=" + fmtd(l);
    if (l >= 0.0)
        return fail(id, info + " — premise 'lambda* < 0 with gamma_R=2.0' does not hold for "
                               "these parameters (spectral re-verification)");
    SimProblem pb{sys, tent_kernel(), case1_profile(), grid, Vec{0.03, 2.0}, paper_u0(grid)};
    double dt = 0.8 * stability_dt_bound(pb, 600.0);
    dt = 600.0 / std::ceil(600.0 / dt);
    Trajectory traj = integrate(pb, 600.0, dt, 0);
    double sup = max_abs(traj.snapshots.back().values.a);
    double bound = 1e-6 * max_abs(sys.cap_v);
    info += " sup|u(600)|=" + fmtd(sup) + " decay bound=" + fmtd(bound);
    return sup < bound ? pass(id, info) : fail(id, info);
}

int criterion7(const std::string& id) {
    const std::size_t n = 50;
    Grid grid = build_grid(n);
    ReactionSystem sys = wn_reaction({});
    Vec D{0.03, 2.0};
    double tol = 1e-9 * max_abs(sys.cap_v);
    std::size_t total_failures = 0;
    double worst = 1e300;
    int c = 1;
    for (const GrowthProfile& g : {case1_profile(), case2_profile(), case3_profile()}) {
        SimProblem pb{sys, tent_kernel(), g, grid, D, paper_u0(grid)};
        PropertyReport rep = check_comparison(pb, 100, 5.0, 0.02, tol, 1000 + c);
        total_failures += rep.failures;
        worst = std::min(worst, rep.worst_margin);
        ++c;
    }
    std::string info = "300 pairs, failures=" + fmtd((double)total_failures) +
                       ", worst margin=" + fmtd(worst);
    return total_failures == 0 ? pass(id, info) : fail(id, info);
}

int criterion8(const std::string& id) {
    double worst = 0.0;
    for (const char* label : {"tent", "case4_asymmetric", "smooth_bump"}) {
        Kernel k = kernel_by_label(label);
        for (double rho : {0.5, 1.0, 2.0, 10.0, 100.0})
            worst = std::max(worst, normalization_residual(k, rho));
    }
    double com = center_of_mass(case4_asymmetric_kernel());
    std::string info =
        "worst mass residual=" + fmtd(worst) + ", case-4 center of mass=" + fmtd(com);
    if (worst > 1e-8) return fail(id, info);
    if (std::abs(com - (-0.6375)) > 1e-3) return fail(id, info + " (reference -0.6375±1e-3)");
    return pass(id, info);
}

int criterion9(const std::string& id) {
    AuxiliaryPhi phi = build_phi(401, 0.25, 0.0025);
    Kernel k = tent_kernel();
    double threshold = 0.0;
    for (double rho : {5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0}) {
        PropertyReport rep = check_phi_inequality(phi, k, {rho});
        if (rep.failures == 0) {
            threshold = rho;
            break;
        }
    }
    if (threshold == 0.0) return fail(id, "no finite threshold found up to rho=500");
    double worst = 1e300;
    for (double rho : {threshold, 2.0 * threshold, 10.0 * threshold}) {
        PropertyReport rep = check_phi_inequality(phi, k, {rho});
        worst = std::min(worst, rep.worst_margin);
        if (rep.failures != 0)
            return fail(id, "margin violation at rho=" + fmtd(rho) +
                            " worst=" + fmtd(rep.worst_margin));
    }
    return pass(id, "threshold rho=" + fmtd(threshold) + ", worst margin over {1,2,10}x: " +
                        fmtd(worst));
}

int criterion10(const std::string& id) {
    ReactionSystem sys;
    sys.m = 1;
    sys.cap_v = {10.0};
    sys.f = [](std::span<const double> u, std::span<double> out) { out[0] = -u[0]; };
    sys.jacobian = [](std::span<const double>, Matrix& J) { J(0, 0) = -1.0; };
    sys.label = "decay";
    Grid grid = build_grid(4);
    StateField u0{Matrix(1, 4), 0.0};
    u0.values.a.assign(4, 1.0);
    SimProblem pb{sys, tent_kernel(), fixed_profile(), grid, Vec{0.0}, u0};
    auto err = [&](double dt) {
        Trajectory t = integrate(pb, 1.0, dt, 0);
        return std::abs(t.snapshots.back().values(0, 0) - std::exp(-1.0));
    };
    double e1 = err(0.02), e2 = err(0.01), e3 = err(0.005);
    double p12 = std::log2(e1 / e2), p23 = std::log2(e2 / e3);
    std::string info = "orders " + fmtd(p12) + ", " + fmtd(p23);
    bool ok = p12 >= 3.8 && p12 <= 4.2 && p23 >= 3.8 && p23 <= 4.2;
    return ok ? pass(id, info) : fail(id, info);
}

int criterion11(const std::string& id, const std::string& cli) {
    if (cli.empty()) return fail(id, "CLI path not provided");
    fs::path d1 = fs::temp_directory_path() / "nlrd_acc11_a";
    fs::path d2 = fs::temp_directory_path() / "nlrd_acc11_b";
    fs::remove_all(d1);
    fs::remove_all(d2);
    for (const fs::path& d : {d1, d2}) {
        std::string cmd = cli + " run --case 1 --grid-n 32 --t-end 5 --emit "
                                "timeseries,heatmap,spectral --out-dir " +
                          d.string() + " > /dev/null";
        if (std::system(cmd.c_str()) != 0) return fail(id, "CLI invocation failed: " + cmd);
    }
    // All emitted CSV/SVG/JSON artifacts except the manifest, whose wall-time
    // fields are inherently run-dependent.
    for (const char* name : {"traj_IV.csv", "traj_IR.csv", "phys_IV.csv", "phys_IR.csv",
                             "heat_IV.svg", "heat_IR.svg", "spectral.json"}) {
        std::ifstream a(d1 / name, std::ios::binary), b(d2 / name, std::ios::binary);
        if (!a || !b) return fail(id, std::string("missing artifact ") + name);
        std::ostringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        if (sa.str() != sb.str()) return fail(id, std::string("artifact differs: ") + name);
    }
    return pass(id, "identical CSV/SVG/JSON artifacts across two runs (manifest wall-times "
                    "excluded)");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <criterion id> [cli path]\n");
        return 2;
    }
    std::string id = argv[1];
    std::string cli = argc > 2 ? argv[2] : "";
    try {
        if (id == "1") return criterion1(id);
        if (id == "2") return criterion_spectral(id, "tent", 0.2196);
        if (id == "3") return criterion_spectral(id, "case4_asymmetric", 0.1181);
        if (id == "4") return criterion4(id);
        if (id == "5") return criterion5(id);
        if (id == "6a") return criterion6a(id);
        if (id == "6b") return criterion6b(id);
        if (id == "6c") return criterion6c(id, false);
        if (id == "6c_supplementary") return criterion6c(id, true);
        if (id == "6d") return criterion6d(id, false);
        if (id == "6d_supplementary") return criterion6d(id, true);
        if (id == "7") return criterion7(id);
        if (id == "8") return criterion8(id);
        if (id == "9") return criterion9(id);
        if (id == "10") return criterion10(id);
        if (id == "11") return criterion11(id, cli);
    } catch (const std::exception& e) {
        return fail(id, std::string("exception: ") + e.what());
    }
    std::fprintf(stderr, "unknown criterion id: %s\n", id.c_str());
    return 2;
}

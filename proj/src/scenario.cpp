#include "nlrd/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlrd/errors.hpp"
#include "nlrd/heatmap.hpp"
#include "nlrd/simulate.hpp"
#include "nlrd/spectral.hpp"
#include "nlrd/steady.hpp"
#include "nlrd/verify.hpp"

namespace nlrd {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string> kSpeciesNames{"IV", "IR"};

bool wants(const Scenario& sc, const std::string& what) {
    for (const auto& e : sc.emit)
        if (e == what) return true;
    return false;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

StateField default_u0(const Grid& grid) {
    const std::size_t n = grid.n_nodes();
    StateField u0{Matrix(2, n), 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        double y = grid.nodes[j];
        u0.values(0, j) = std::sin(y / 2.0);
        u0.values(1, j) = 0.5 * y - 0.5 * y * y;
    }
    return u0;
}

void write_long_csv(const std::string& path, const Trajectory& traj, const Grid& grid,
                    std::size_t species, const GrowthProfile* physical) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    out << (physical ? "t,x,species,value\n" : "t,y,species,value\n");
    for (const auto& snap : traj.snapshots) {
        double scale = physical ? physical->rho(snap.time) : 1.0;
        for (std::size_t j = 0; j < grid.n_nodes(); ++j)
            out << fmt(snap.time) << ',' << fmt(scale * grid.nodes[j]) << ','
                << kSpeciesNames[species] << ',' << fmt(snap.values(species, j)) << '\n';
    }
}

json report_to_json(const PropertyReport& r) {
    json j{{"name", r.name},         {"trials", r.trials},
           {"failures", r.failures}, {"worst_margin", r.worst_margin},
           {"tol", r.tol},           {"seed", r.seed},
           {"pass", r.pass()},       {"note", r.note}};
    json w = json::array();
    for (const auto& wit : r.witnesses)
        w.push_back({{"inputs", wit.inputs}, {"location", wit.location}, {"value", wit.value}});
    j["witnesses"] = w;
    return j;
}

}  // namespace

void apply_case_defaults(Scenario& sc) {
    switch (sc.case_id) {
        case 0:
            break;
        case 1:
            sc.kernel_label = "tent";
            sc.growth_label = "case1";
            break;
        case 2:
            sc.kernel_label = "tent";
            sc.growth_label = "case2";
            sc.period = 20.0;
            break;
        case 3:
            sc.kernel_label = "tent";
            sc.growth_label = "case3";
            break;
        case 4:
            sc.kernel_label = "case4_asymmetric";
            sc.growth_label = "case4";  // same profile as case 1
            break;
        default:
            throw ConfigError("unknown case id " + std::to_string(sc.case_id) +
                              " (expected 0..4)");
    }
}

std::string scenario_json(const Scenario& sc) {
    json j;
    j["case_id"] = sc.case_id;
    j["kernel"] = sc.kernel_label;
    j["growth"] = sc.growth_label;
    j["params"] = {{"d_V", sc.params.d_V},       {"alpha_V", sc.params.alpha_V},
                   {"alpha_R", sc.params.alpha_R}, {"beta_R", sc.params.beta_R},
                   {"gamma_R", sc.params.gamma_R}, {"N_R", sc.params.N_R},
                   {"A_V", sc.params.A_V},       {"D_V", sc.params.D_V},
                   {"D_R", sc.params.D_R}};
    j["grid_n"] = sc.grid_n;
    j["dt"] = sc.dt;
    j["t_end"] = sc.t_end;
    j["spectral_dt"] = sc.spectral_dt;
    j["period"] = sc.period;
    j["emit"] = sc.emit;
    j["out_dir"] = sc.out_dir;
    j["strict_k"] = sc.strict_k;
    j["version"] = kToolkitVersion;
    return j.dump(2);
}

std::string scenario_hash(const Scenario& sc) {
    // Hash only the scientific configuration: where artifacts land must not
    // change their contents.
    Scenario canonical = sc;
    canonical.out_dir.clear();
    std::string s = scenario_json(canonical);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Scenario scenario_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read scenario file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario JSON parse error: ") + e.what());
    }
    static const std::vector<std::string> known{
        "case_id", "kernel", "growth", "params",  "grid_n",  "dt",     "t_end",
        "spectral_dt", "period", "emit", "out_dir", "strict_k", "version"};
    for (auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown scenario key: " + key);
    }
    Scenario sc;
    try {
        sc.case_id = j.value("case_id", 0);
        sc.kernel_label = j.value("kernel", sc.kernel_label);
        sc.growth_label = j.value("growth", sc.growth_label);
        if (j.contains("params")) {
            const json& p = j["params"];
            static const std::vector<std::string> pk{"d_V", "alpha_V", "alpha_R", "beta_R",
                                                     "gamma_R", "N_R", "A_V", "D_V", "D_R"};
            for (auto& [key, _] : p.items())
                if (std::find(pk.begin(), pk.end(), key) == pk.end())
                    throw ConfigError("unknown model param: " + key);
            sc.params.d_V = p.value("d_V", sc.params.d_V);
            sc.params.alpha_V = p.value("alpha_V", sc.params.alpha_V);
            sc.params.alpha_R = p.value("alpha_R", sc.params.alpha_R);
            sc.params.beta_R = p.value("beta_R", sc.params.beta_R);
            sc.params.gamma_R = p.value("gamma_R", sc.params.gamma_R);
            sc.params.N_R = p.value("N_R", sc.params.N_R);
            sc.params.A_V = p.value("A_V", sc.params.A_V);
            sc.params.D_V = p.value("D_V", sc.params.D_V);
            sc.params.D_R = p.value("D_R", sc.params.D_R);
        }
        sc.grid_n = j.value("grid_n", sc.grid_n);
        sc.dt = j.value("dt", sc.dt);
        sc.t_end = j.value("t_end", sc.t_end);
        sc.spectral_dt = j.value("spectral_dt", sc.spectral_dt);
        sc.period = j.value("period", sc.period);
        if (j.contains("emit")) sc.emit = j["emit"].get<std::vector<std::string>>();
        sc.out_dir = j.value("out_dir", sc.out_dir);
        sc.strict_k = j.value("strict_k", sc.strict_k);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario JSON type error: ") + e.what());
    }
    apply_case_defaults(sc);
    return sc;
}

void run_scenario(const Scenario& sc_in) {
    Scenario sc = sc_in;
    apply_case_defaults(sc);
    for (const auto& e : sc.emit)
        if (e != "timeseries" && e != "heatmap" && e != "spectral" && e != "steady" &&
            e != "verify")
            throw ConfigError("unknown emit target: " + e);
    if (!(sc.t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (sc.dt < 0.0) throw ConfigError("dt must be nonnegative (0 = automatic)");

    Kernel kernel = kernel_by_label(sc.kernel_label);
    GrowthProfile growth = growth_by_label(sc.growth_label);
    ReactionSystem system = wn_reaction(sc.params);
    Grid grid = build_grid(sc.grid_n);
    Vec diffusion{sc.params.D_V, sc.params.D_R};
    const std::string hash = scenario_hash(sc);

    fs::create_directories(sc.out_dir);
    auto path = [&](const std::string& name) { return (fs::path(sc.out_dir) / name).string(); };

    json manifest;
    manifest["config"] = json::parse(scenario_json(sc));
    manifest["scenario_hash"] = hash;
    manifest["versions"] = {{"nlrd", kToolkitVersion}, {"compiler", __VERSION__}};
    json wall_times;
    json artifacts = json::array();

    SimProblem problem{system, kernel, growth, grid, diffusion, default_u0(grid)};
    double dt = sc.dt;
    if (dt == 0.0) dt = 0.8 * stability_dt_bound(problem, sc.t_end);
    dt = sc.t_end / std::ceil(sc.t_end / dt);
    std::size_t steps = static_cast<std::size_t>(std::llround(sc.t_end / dt));
    std::size_t every = std::max<std::size_t>(1, steps / 200);
    manifest["dt_resolved"] = dt;

    IntegrateOptions opts;
    opts.strict_k = sc.strict_k;
    opts.scenario_hash = hash;

    const bool need_traj = wants(sc, "timeseries") || wants(sc, "heatmap");
    if (need_traj) {
        auto t0 = std::chrono::steady_clock::now();
        Trajectory traj = integrate(problem, sc.t_end, dt, every, opts);
        wall_times["integrate"] = elapsed_s(t0);
        if (wants(sc, "timeseries")) {
            for (std::size_t i = 0; i < system.m; ++i) {
                write_long_csv(path("traj_" + kSpeciesNames[i] + ".csv"), traj, grid, i, nullptr);
                write_long_csv(path("phys_" + kSpeciesNames[i] + ".csv"), traj, grid, i, &growth);
                artifacts.push_back("traj_" + kSpeciesNames[i] + ".csv");
                artifacts.push_back("phys_" + kSpeciesNames[i] + ".csv");
            }
        }
        if (wants(sc, "heatmap")) {
            for (std::size_t i = 0; i < system.m; ++i) {
                std::string name = "heat_" + kSpeciesNames[i] + ".svg";
                write_heatmap_svg(path(name), traj, i, grid,
                                  kSpeciesNames[i] + " on the reference domain");
                artifacts.push_back(name);
            }
        }
    }

    if (wants(sc, "spectral")) {
        auto t0 = std::chrono::steady_clock::now();
        json spec_json;
        spec_json["scenario_hash"] = hash;
        spec_json["grid_n"] = sc.grid_n;
        if (const auto* fx = std::get_if<AsymptoticallyFixed>(&growth.kind)) {
            LinearGenerator gen =
                build_generator(system, kernel, fx->rho_inf, grid, diffusion, 0.0);
            SpectralReport rep = spectral_bound_autonomous(gen);
            spec_json["quantity"] = "lambda_star";
            spec_json["lambda_star"] = rep.value;
            spec_json["method"] = rep.method;
            spec_json["residual"] = rep.residual;
            spec_json["rho_inf"] = fx->rho_inf;
        } else if (std::get_if<AsymptoticallyPeriodic>(&growth.kind)) {
            const auto& ap = std::get<AsymptoticallyPeriodic>(growth.kind);
            KernelGeneratorFamily family{
                system, kernel, grid, diffusion, ap.rho_T, [&ap](double t) {
                    return ap.rho_T_dot(t) / ap.rho_T(t);
                }};
            double T = ap.period;
            double mdt = T / std::ceil(T / sc.spectral_dt);
            SpectralReport rep = periodic_bound(family, T, mdt);
            spec_json["quantity"] = "lambda_star_T";
            spec_json["lambda_star_T"] = rep.value;
            spec_json["omega"] = rep.omega;
            spec_json["method"] = rep.method;
            spec_json["period"] = T;
            spec_json["monodromy_dt"] = mdt;
        } else {
            const auto& ub = std::get<AsymptoticallyUnbounded>(growth.kind);
            Matrix A = system.jacobian_at_zero();
            for (std::size_t i = 0; i < system.m; ++i) A(i, i) -= ub.k;
            SpectralReport rep = ode_bound(A);
            spec_json["quantity"] = "s_A";
            spec_json["s_A"] = rep.value;
            spec_json["method"] = rep.method;
            spec_json["k"] = ub.k;
            if (rep.eigvec) spec_json["zbar"] = *rep.eigvec;
        }
        std::ofstream out(path("spectral.json"));
        if (!out) throw ConfigError("cannot open spectral.json");
        out << spec_json.dump(2) << '\n';
        artifacts.push_back("spectral.json");
        wall_times["spectral"] = elapsed_s(t0);
    }

    if (wants(sc, "steady")) {
        auto t0 = std::chrono::steady_clock::now();
        std::ofstream out(path("steady.csv"));
        if (!out) throw ConfigError("cannot open steady.csv");
        if (const auto* fx = std::get_if<AsymptoticallyFixed>(&growth.kind)) {
            SteadyResult res =
                autonomous_state(system, kernel, fx->rho_inf, grid, diffusion, 1e-8);
            out << "# kind=stationary residual=" << fmt(res.residual)
                << " iterations=" << res.iterations << " zero_state=" << res.zero_state << '\n';
            out << "y,species,value\n";
            for (std::size_t i = 0; i < system.m; ++i)
                for (std::size_t j = 0; j < grid.n_nodes(); ++j)
                    out << fmt(grid.nodes[j]) << ',' << kSpeciesNames[i] << ','
                        << fmt(res.state.values(i, j)) << '\n';
        } else if (std::get_if<AsymptoticallyPeriodic>(&growth.kind)) {
            SteadyResult res =
                periodic_state(system, kernel, growth, sc.period, grid, diffusion, 1e-6);
            out << "# kind=periodic residual=" << fmt(res.residual)
                << " iterations=" << res.iterations << " zero_state=" << res.zero_state << '\n';
            out << "t,y,species,value\n";
            for (const auto& snap : res.orbit)
                for (std::size_t i = 0; i < system.m; ++i)
                    for (std::size_t j = 0; j < grid.n_nodes(); ++j)
                        out << fmt(snap.time) << ',' << fmt(grid.nodes[j]) << ','
                            << kSpeciesNames[i] << ',' << fmt(snap.values(i, j)) << '\n';
        } else {
            const auto& ub = std::get<AsymptoticallyUnbounded>(growth.kind);
            SteadyResult res = ode_equilibrium(system, ub.k, 1e-8);
            out << "# kind=ode_equilibrium residual=" << fmt(res.residual)
                << " iterations=" << res.iterations << " zero_state=" << res.zero_state << '\n';
            out << "species,value\n";
            for (std::size_t i = 0; i < system.m; ++i)
                out << kSpeciesNames[i] << ',' << fmt(res.point[i]) << '\n';
        }
        artifacts.push_back("steady.csv");
        wall_times["steady"] = elapsed_s(t0);
    }

    if (wants(sc, "verify")) {
        auto t0 = std::chrono::steady_clock::now();
        json reports = json::array();

        SimProblem vp = problem;
        reports.push_back(report_to_json(check_comparison(vp, 5, 5.0, dt, 1e-9 * max_abs(system.cap_v))));

        StateField spot{Matrix(system.m, grid.n_nodes()), 0.0};
        for (std::size_t j = 0; j < std::min<std::size_t>(3, grid.n_nodes()); ++j)
            spot.values(0, j) = 0.5;
        reports.push_back(
            report_to_json(check_strong_positivity(vp, spot, 1.0, 1e-12 * max_abs(system.cap_v))));

        reports.push_back(report_to_json(
            check_subhomogeneity_dynamics(vp, 0.5, default_u0(grid), 5.0, dt)));

        AuxiliaryPhi phi = build_phi(201, 0.25, 0.0025);
        reports.push_back(report_to_json(check_phi_inequality(phi, kernel, {50.0, 100.0})));

        Matrix A = system.jacobian_at_zero();
        SpectralReport ode = ode_bound(A);
        if (ode.value > 0.0 && ode.eigvec) {
            reports.push_back(report_to_json(check_delta_subsolution(
                system, kernel, diffusion, 50.0, {1e-3}, *ode.eigvec, phi, 0.0)));
        }

        std::ofstream out(path("verify.json"));
        if (!out) throw ConfigError("cannot open verify.json");
        out << reports.dump(2) << '\n';
        artifacts.push_back("verify.json");
        wall_times["verify"] = elapsed_s(t0);
    }

    manifest["artifacts"] = artifacts;
    manifest["wall_times_s"] = wall_times;
    std::ofstream out(path("manifest.json"));
    if (!out) throw ConfigError("cannot open manifest.json");
    out << manifest.dump(2) << '\n';
}

}  // namespace nlrd

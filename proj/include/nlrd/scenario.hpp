#pragma once

#include <string>
#include <vector>

#include "nlrd/models.hpp"

namespace nlrd {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Fully resolved run configuration. Built-in cases 1-4 fill the fields;
// case_id = 0 means a custom scenario driven entirely by the fields.
struct Scenario {
    int case_id = 0;
    std::string kernel_label = "tent";
    std::string growth_label = "fixed";
    WNParams params;
    std::size_t grid_n = 200;
    double dt = 0.0;          // 0 = automatic (80% of the sampled stability bound)
    double t_end = 200.0;
    double spectral_dt = 1e-3;  // monodromy step for the periodic bound
    double period = 20.0;
    std::vector<std::string> emit{"timeseries", "heatmap", "spectral"};
    std::string out_dir = "out";
    bool strict_k = false;
};

// Fill kernel/growth/t_end defaults for a built-in case. Throws ConfigError
// for unknown ids.
void apply_case_defaults(Scenario& scenario);

// Load a scenario JSON file; unknown keys are rejected.
Scenario scenario_from_json_file(const std::string& path);

// Resolved-config echo used in the manifest and for hashing.
std::string scenario_json(const Scenario& scenario);

// FNV-1a hash of the resolved configuration, hex string.
std::string scenario_hash(const Scenario& scenario);

// Execute the scenario and write the requested artifacts into out_dir.
// Throws ConfigError / NumericError; the CLI maps these to exit codes 2 / 3.
void run_scenario(const Scenario& scenario);

}  // namespace nlrd

#pragma once

#include "crpower/sim.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crpower {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full tool configuration: deployment, scenario knobs and experiment grids.
// Defaults reproduce the reference TV-band scene. Keys carry explicit unit
// suffixes and are converted to internal units (m, rad, W, s) at ingestion.
struct AppConfig {
    Deployment deployment;
    PolarPoint ctx_pos{50e3, std::numbers::pi / 3.0};
    MobilityParams mobility;
    TrafficParams traffic;
    Policy policy;
    double update_period_s = 1.0;
    double sim_time_s = 1000.0;
    bool shadowing_enabled = false;
    std::uint64_t seed = 1;
    double planning_margin_db = 0.0;

    // Experiment grids.
    double r2_min_km = 40.0;
    double r2_max_km = 60.0;
    double r2_step_km = 0.1;
    double theta_min_deg = 0.0;
    double theta_max_deg = 180.0;
    double theta_step_deg = 1.0;
    double p_grid_min_w = 1.0;
    double p_grid_max_w = 100.0;
    double p_grid_step_w = 1.0;
    double slice_theta_deg = 60.0;
    std::vector<double> r2_list_km{47.0, 50.0, 54.0};
    std::vector<double> speeds_mps{10.0, 20.0, 30.0, 40.0};
    std::vector<double> fixed_powers_w{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    int n_seeds = 20;

    std::string trajectory_dump; // optional CSV path written by `run`
    int threads = 0;             // 0 = library default
};

// Defaults overlaid with the key = value file at `path` ("" = defaults only).
AppConfig load_config(const std::string& path);

// Parses one config body (used for files and in tests).
void apply_config_text(AppConfig& cfg, const std::string& text, const std::string& origin);

// Applies a single key=value pair; throws ConfigError on unknown keys or
// malformed values.
void apply_override(AppConfig& cfg, const std::string& key, const std::string& value);

// Throws ConfigError when any cross-field invariant fails.
void validate_config(const AppConfig& cfg);

// Every key with its current value in canonical units, in a fixed order.
// Feeding these back through apply_override reproduces the configuration.
std::vector<std::pair<std::string, std::string>> resolved_entries(const AppConfig& cfg);

// Scenario for the `run` subcommand / one sweep cell.
ScenarioConfig make_scenario(const AppConfig& cfg);

} // namespace crpower

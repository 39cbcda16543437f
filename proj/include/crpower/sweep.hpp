#pragma once

#include "crpower/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace crpower {

// The sweep kernels are data-parallel over independent cells/scenarios. The
// serial path is the reference; the parallel path must produce identical
// results, which the tests assert bit-for-bit.
enum class ExecMode { serial, parallel };

// Applies cfg.threads to the OpenMP runtime (0 leaves the default).
void set_thread_count(int threads);

// Runs independent scenarios; each owns its RNG streams, results land in
// input order regardless of scheduling.
std::vector<SimMetrics> run_batch(const std::vector<ScenarioConfig>& scenarios, ExecMode mode);

struct SurfaceCell {
    double r2_km = 0.0;
    double theta_deg = 0.0;
    OptimalPower::Status status = OptimalPower::Status::ok;
    double p_unclamped_w = 0.0; // meaningless when status == infeasible_forbidden
    double p_clamped_w = 0.0;
    double r_max_m = 0.0;
    double d22_m = 0.0; // distance to the transmitter for slice geometry

    bool operator==(const SurfaceCell&) const = default;
};

// Region-maximizing power over the (r2, theta_pc) grid.
std::vector<SurfaceCell> evaluate_surface(const AppConfig& cfg, ExecMode mode);

// The fixed-angle slice of the surface over the r2 grid, with reachability
// of the receiver placed on the slice ray at azimuth phi_1 + theta.
std::vector<SurfaceCell> evaluate_slice(const AppConfig& cfg, ExecMode mode);

struct RadiusSweepRow {
    double r2_km = 0.0;
    double theta_deg = 0.0;
    double p_ct_w = 0.0;
    double r_ct_m = 0.0;
    bool at_popt = false; // row inserted at the exact region-maximizing power

    bool operator==(const RadiusSweepRow&) const = default;
};

// Concurrent-transmission radius over the power grid for each r2 in
// cfg.r2_list_km at the slice angle.
std::vector<RadiusSweepRow> evaluate_radius_sweep(const AppConfig& cfg, ExecMode mode);

struct PdrRun {
    PolicyKind policy = PolicyKind::optimal_control;
    double p_fixed_w = 0.0; // fixed policy only
    double speed_mps = 0.0;
    int seed_index = 0;
    double sigma_db = 0.0;
    SimMetrics metrics;
};

struct PdrAggregate {
    PolicyKind policy = PolicyKind::optimal_control;
    double p_fixed_w = 0.0;
    double speed_mps = 0.0;
    int n_seeds = 0;
    double mean_pdr = 0.0;
    double se_pdr = 0.0;
    double mean_r_ct_m = 0.0;
};

// Fixed-power policies crossed with the optimal controller over
// speeds x seeds. Scenario seeds depend only on (base seed, seed index), so
// policies at the same seed index share trajectories and arrivals.
std::vector<PdrRun> run_pdr_sweep(const AppConfig& cfg, ExecMode mode);

std::vector<PdrAggregate> aggregate_pdr(const std::vector<PdrRun>& runs);

// Shadow-study presets: unequal exponents and 6 dB shadowing at 30 m/s.
void apply_pdr_shadow_presets(AppConfig& cfg);

// CSV emission. Every file starts with "# key=value" comment lines echoing
// the resolved configuration, then one header row, then newline-terminated
// data rows. Output is byte-identical for identical configurations.
void write_surface_csv(std::ostream& os, const AppConfig& cfg,
                       const std::vector<SurfaceCell>& cells);
void write_slice_csv(std::ostream& os, const AppConfig& cfg,
                     const std::vector<SurfaceCell>& cells);
void write_radius_sweep_csv(std::ostream& os, const AppConfig& cfg,
                            const std::vector<RadiusSweepRow>& rows);
void write_pdr_csv(std::ostream& os, const AppConfig& cfg, const std::string& subcommand,
                   const std::vector<PdrRun>& runs, const std::vector<PdrAggregate>& aggs);
void write_run_csv(std::ostream& os, const AppConfig& cfg, const SimMetrics& metrics);
void write_trajectory_csv(std::ostream& os, const AppConfig& cfg);

} // namespace crpower

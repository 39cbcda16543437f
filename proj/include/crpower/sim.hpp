#pragma once

#include "crpower/mobility.hpp"
#include "crpower/powerctl.hpp"

#include <cstdint>
#include <vector>

namespace crpower {

struct TrafficParams {
    double arrival_rate_pps = 10.0;
    double mean_length_bytes = 100.0;
};

enum class PolicyKind { fixed_power, optimal_control };

struct Policy {
    PolicyKind kind = PolicyKind::optimal_control;
    double fixed_power_w = 60.0; // fixed_power only
};

struct ScenarioConfig {
    Deployment deployment;
    PolarPoint ctx_pos{50e3, std::numbers::pi / 3.0};
    MobilityParams mobility;
    TrafficParams traffic;
    Policy policy;
    double update_period_s = 1.0;
    bool shadowing_enabled = false;
    double sim_time_s = 1000.0;
    std::uint64_t seed = 1;
    // Shadowing offset the controller plans at; 0 = median channel.
    double planning_margin_db = 0.0;
};

void validate(const ScenarioConfig& cfg);

struct SimMetrics {
    std::uint64_t packets_sent = 0;
    std::uint64_t packets_delivered = 0;
    double pdr = 0.0;
    std::uint64_t pr_violations = 0;
    double silent_fraction = 0.0;
    double mean_r_ct_m = 0.0;

    bool operator==(const SimMetrics&) const = default;
};

struct PacketArrival {
    double t_s = 0.0;
    double length_bytes = 0.0;
};

// Poisson arrivals over [0, horizon); each packet carries an exponential
// length. Lengths are recorded but delivery is evaluated at the arrival
// instant (no data rate is modeled).
std::vector<PacketArrival> generate_arrivals(const TrafficParams& traffic, double horizon_s,
                                             RandomStream& rng);

// Per-packet shadowing realizations, one difference term per SIR constraint.
struct ShadowDraws {
    double x_p_db = 0.0;
    double x_c_db = 0.0;
};

struct DeliveryOutcome {
    bool delivered = false;    // both ground-truth SIR constraints hold
    bool pr_violation = false; // primary SIR constraint failed during the attempt
};

// Ground-truth check at the true receiver position for a transmission at
// p_ct_w. Uses the dB route with the supplied draws when shadowing is enabled
// or the exponents differ, the linear equal-exponent SIRs otherwise.
DeliveryOutcome evaluate_delivery(const PolarPoint& true_crx, double p_ct_w,
                                  const ShadowDraws& draws, const ScenarioConfig& cfg);

// Event-driven run over [0, sim_time]: position updates every update_period
// (the controller only ever sees these), mobility segments, Poisson arrivals.
// Ties between an update and an arrival resolve update-first. Deterministic
// for a fixed config.
SimMetrics run_scenario(const ScenarioConfig& cfg);

// The exact receiver trajectory a run_scenario call with this config uses.
std::vector<MotionSegment> scenario_trajectory(const ScenarioConfig& cfg);

} // namespace crpower

#pragma once

#include "crpower/geometry.hpp"
#include "crpower/rng.hpp"

#include <numbers>
#include <span>
#include <vector>

namespace crpower {

// One piece of piecewise-linear motion; speed is 0 during pauses.
struct MotionSegment {
    double t_start_s = 0.0;
    double t_end_s = 0.0;
    CartesianPoint origin; // position at t_start
    double speed_mps = 0.0;
    double heading_rad = 0.0;
};

// Random-direction motion: move epochs of duration U(0, epoch_max) with
// heading U(0, 2*pi), alternating with pauses of mean pause_mean.
struct MobilityParams {
    double mean_speed_mps = 30.0;
    double epoch_max_s = 30.0;
    double pause_mean_s = 5.0;
    double speed_jitter = 0.0; // if > 0, per-epoch speed factor U(1-j, 1+j)
    PolarPoint start{50e3, std::numbers::pi / 3.0};
};

void validate(const MobilityParams& p);

// Alternating move/pause segments covering [0, horizon], deterministic for a
// given stream state. The final segment is truncated at the horizon.
std::vector<MotionSegment> generate_trajectory(const MobilityParams& params,
                                               double horizon_s, RandomStream& rng);

// Throws std::out_of_range when t lies outside the trajectory span.
CartesianPoint cartesian_position_at(std::span<const MotionSegment> trajectory, double t_s);
PolarPoint position_at(std::span<const MotionSegment> trajectory, double t_s);

// Extrapolates the segment dt seconds past its start, assuming the movement
// pattern does not change. dt = 0 returns the segment origin.
PolarPoint predict_position(const MotionSegment& current, double dt_s);

} // namespace crpower

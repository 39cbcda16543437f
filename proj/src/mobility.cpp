#include "crpower/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crpower {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

void validate(const MobilityParams& p) {
    if (!(p.mean_speed_mps >= 0.0))
        throw std::invalid_argument("mobility: mean speed must be >= 0");
    if (!(p.epoch_max_s > 0.0))
        throw std::invalid_argument("mobility: epoch_max must be > 0");
    if (!(p.pause_mean_s >= 0.0))
        throw std::invalid_argument("mobility: pause mean must be >= 0");
    if (!(p.speed_jitter >= 0.0) || !(p.speed_jitter < 1.0))
        throw std::invalid_argument("mobility: speed jitter must be in [0, 1)");
}

std::vector<MotionSegment> generate_trajectory(const MobilityParams& params,
                                               double horizon_s, RandomStream& rng) {
    if (!(horizon_s > 0.0))
        throw std::invalid_argument("generate_trajectory: horizon must be > 0");
    validate(params);

    std::vector<MotionSegment> segs;
    CartesianPoint pos = to_cartesian(params.start);
    double t = 0.0;
    while (t < horizon_s) {
        // Draw order per epoch is fixed: duration, heading, [jitter], pause.
        const double dur = rng.uniform(0.0, params.epoch_max_s);
        const double heading = rng.uniform(0.0, two_pi);
        double speed = params.mean_speed_mps;
        if (params.speed_jitter > 0.0)
            speed *= rng.uniform(1.0 - params.speed_jitter, 1.0 + params.speed_jitter);
        const double move_end = std::min(t + dur, horizon_s);
        if (move_end > t) {
            segs.push_back({t, move_end, pos, speed, heading});
            pos.x += speed * (move_end - t) * std::cos(heading);
            pos.y += speed * (move_end - t) * std::sin(heading);
            t = move_end;
        }
        if (t >= horizon_s) break;
        const double pause = rng.exponential(params.pause_mean_s);
        const double pause_end = std::min(t + pause, horizon_s);
        if (pause_end > t) {
            segs.push_back({t, pause_end, pos, 0.0, 0.0});
            t = pause_end;
        }
    }
    return segs;
}

CartesianPoint cartesian_position_at(std::span<const MotionSegment> trajectory, double t_s) {
    if (trajectory.empty() || t_s < trajectory.front().t_start_s ||
        t_s > trajectory.back().t_end_s)
        throw std::out_of_range("position_at: time outside trajectory span");
    auto it = std::upper_bound(trajectory.begin(), trajectory.end(), t_s,
                               [](double v, const MotionSegment& s) { return v < s.t_start_s; });
    const MotionSegment& seg = *(it - 1);
    const double dt = std::min(t_s, seg.t_end_s) - seg.t_start_s;
    return {seg.origin.x + seg.speed_mps * dt * std::cos(seg.heading_rad),
            seg.origin.y + seg.speed_mps * dt * std::sin(seg.heading_rad)};
}

PolarPoint position_at(std::span<const MotionSegment> trajectory, double t_s) {
    return to_polar(cartesian_position_at(trajectory, t_s));
}

PolarPoint predict_position(const MotionSegment& current, double dt_s) {
    if (!(dt_s >= 0.0)) throw std::invalid_argument("predict_position: dt must be >= 0");
    return to_polar({current.origin.x + current.speed_mps * dt_s * std::cos(current.heading_rad),
                     current.origin.y + current.speed_mps * dt_s * std::sin(current.heading_rad)});
}

} // namespace crpower

#pragma once

namespace crpower {

struct CartesianPoint {
    double x = 0.0;
    double y = 0.0;
};

// Position relative to the broadcast base station at the origin.
// r in meters, phi in radians, kept in [0, 2*pi) from construction on.
struct PolarPoint {
    double r = 0.0;
    double phi = 0.0;

    PolarPoint() = default;
    PolarPoint(double r_m, double phi_rad); // throws std::invalid_argument if r < 0
};

// Wraps any finite angle into [0, 2*pi).
double wrap_angle(double phi);

// Wrapped absolute angular difference, min(|d|, 2*pi - |d|), in [0, pi].
double relative_angle(double phi_a, double phi_b);

CartesianPoint to_cartesian(const PolarPoint& p);
PolarPoint to_polar(const CartesianPoint& p);

// Law-of-cosines chord between points at radii r_a, r_b subtending theta.
double separation(double r_a, double r_b, double theta);
double separation(const PolarPoint& a, const PolarPoint& b);

} // namespace crpower

#include "crpower/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crpower {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double wrap_angle(double phi) {
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0; // the addition above can round up to 2*pi
    return w;
}

PolarPoint::PolarPoint(double r_m, double phi_rad) : r(r_m), phi(wrap_angle(phi_rad)) {
    if (!(r_m >= 0.0)) throw std::invalid_argument("PolarPoint: radius must be >= 0");
}

double relative_angle(double phi_a, double phi_b) {
    const double d = std::fmod(std::fabs(phi_a - phi_b), two_pi);
    return std::min(d, two_pi - d);
}

CartesianPoint to_cartesian(const PolarPoint& p) {
    return {p.r * std::cos(p.phi), p.r * std::sin(p.phi)};
}

PolarPoint to_polar(const CartesianPoint& p) {
    return PolarPoint(std::hypot(p.x, p.y), wrap_angle(std::atan2(p.y, p.x)));
}

double separation(double r_a, double r_b, double theta) {
    const double d2 = r_a * r_a + r_b * r_b - 2.0 * r_a * r_b * std::cos(theta);
    return d2 > 0.0 ? std::sqrt(d2) : 0.0;
}

double separation(const PolarPoint& a, const PolarPoint& b) {
    return separation(a.r, b.r, relative_angle(a.phi, b.phi));
}

} // namespace crpower

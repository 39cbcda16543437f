#include "crpower/mobility.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

using namespace crpower;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("stationary receiver never moves") {
    MobilityParams mp;
    mp.mean_speed_mps = 0.0;
    mp.start = PolarPoint(50e3, pi / 3.0);
    RandomStream rng(1);
    const auto traj = generate_trajectory(mp, 500.0, rng);
    for (double t = 0.0; t <= 500.0; t += 37.0) {
        const PolarPoint p = position_at(traj, t);
        CHECK(p.r == doctest::Approx(50e3).epsilon(1e-12));
        CHECK(p.phi == doctest::Approx(pi / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("radial motion") {
    const MotionSegment seg{0.0, 100.0, {1000.0, 0.0}, 10.0, 0.0};
    const PolarPoint p = position_at(std::span(&seg, 1), 100.0);
    CHECK(p.r == doctest::Approx(2000.0));
    CHECK(p.phi == doctest::Approx(0.0));
}

TEST_CASE("single segment matches the polar trajectory formulas") {
    // Start (50 km, 60 deg), speed 30 m/s, heading pi/2, t = 10 s.
    const double R2 = 50e3, Phi2 = pi / 3.0, s = 30.0, gamma = pi / 2.0, t = 10.0;
    const MotionSegment seg{0.0, 20.0, to_cartesian(PolarPoint(R2, Phi2)), s, gamma};
    const PolarPoint p = position_at(std::span(&seg, 1), t);
    const double x = R2 * std::cos(Phi2) + s * t * std::cos(gamma);
    const double y = R2 * std::sin(Phi2) + s * t * std::sin(gamma);
    CHECK(p.r == doctest::Approx(std::sqrt(x * x + y * y)).epsilon(1e-12));
    CHECK(p.phi == doctest::Approx(std::atan2(y, x)).epsilon(1e-12));
}

TEST_CASE("trajectories are deterministic and contiguous") {
    MobilityParams mp;
    RandomStream a(99), b(99);
    const auto t1 = generate_trajectory(mp, 1000.0, a);
    const auto t2 = generate_trajectory(mp, 1000.0, b);
    REQUIRE(t1.size() == t2.size());
    for (size_t i = 0; i < t1.size(); ++i) {
        CHECK(t1[i].t_start_s == t2[i].t_start_s);
        CHECK(t1[i].origin.x == t2[i].origin.x);
        CHECK(t1[i].heading_rad == t2[i].heading_rad);
    }
    CHECK(t1.front().t_start_s == 0.0);
    CHECK(t1.back().t_end_s == 1000.0);
    for (size_t i = 1; i < t1.size(); ++i) {
        CHECK(t1[i].t_start_s == t1[i - 1].t_end_s);
        const auto& prev = t1[i - 1];
        const double dt = prev.t_end_s - prev.t_start_s;
        const double ex = prev.origin.x + prev.speed_mps * dt * std::cos(prev.heading_rad);
        const double ey = prev.origin.y + prev.speed_mps * dt * std::sin(prev.heading_rad);
        CHECK(std::hypot(t1[i].origin.x - ex, t1[i].origin.y - ey) < 1e-9);
    }
}

TEST_CASE("epoch statistics match the configured distributions") {
    MobilityParams mp;
    RandomStream rng(7);
    const auto traj = generate_trajectory(mp, 2.2e6, rng); // ~110k segments
    double pause_sum = 0.0;
    int pauses = 0;
    std::complex<double> resultant{0.0, 0.0};
    int moves = 0;
    for (const MotionSegment& seg : traj) {
        if (seg.speed_mps == 0.0) {
            pause_sum += seg.t_end_s - seg.t_start_s;
            ++pauses;
        } else {
            resultant += std::polar(1.0, seg.heading_rad);
            ++moves;
        }
    }
    REQUIRE(moves > 50'000);
    REQUIRE(pauses > 50'000);
    CHECK(pause_sum / pauses == doctest::Approx(5.0).epsilon(0.02));
    CHECK(std::abs(resultant) / static_cast<double>(moves) < 0.01);
}

TEST_CASE("degenerate horizon yields one truncated segment") {
    MobilityParams mp;
    RandomStream rng(3);
    const auto traj = generate_trajectory(mp, 1e-6, rng);
    REQUIRE(traj.size() == 1);
    CHECK(traj.front().t_end_s == 1e-6);
    CHECK_THROWS_AS(generate_trajectory(mp, 0.0, rng), std::invalid_argument);
}

TEST_CASE("queries outside the span are rejected") {
    MobilityParams mp;
    RandomStream rng(5);
    const auto traj = generate_trajectory(mp, 100.0, rng);
    CHECK_THROWS_AS(position_at(traj, -1.0), std::out_of_range);
    CHECK_THROWS_AS(position_at(traj, 100.0001), std::out_of_range);
    CHECK_NOTHROW(position_at(traj, 0.0));
    CHECK_NOTHROW(position_at(traj, 100.0));
}

TEST_CASE("displacement is bounded by the speed") {
    MobilityParams mp;
    mp.mean_speed_mps = 40.0;
    RandomStream rng(11);
    const auto traj = generate_trajectory(mp, 1000.0, rng);
    RandomStream probe(13);
    for (int i = 0; i < 500; ++i) {
        const double t = probe.uniform(0.0, 995.0);
        const double delta = probe.uniform(0.0, 5.0);
        const CartesianPoint a = cartesian_position_at(traj, t);
        const CartesianPoint b = cartesian_position_at(traj, t + delta);
        CHECK(std::hypot(b.x - a.x, b.y - a.y) <= 40.0 * delta + 1e-9);
    }
}

TEST_CASE("prediction") {
    SUBCASE("zero horizon returns the segment origin") {
        const MotionSegment seg{5.0, 25.0, {100.0, 200.0}, 12.0, 1.0};
        const PolarPoint p = predict_position(seg, 0.0);
        const PolarPoint expect = to_polar({100.0, 200.0});
        CHECK(p.r == expect.r);
        CHECK(p.phi == expect.phi);
        CHECK_THROWS_AS(predict_position(seg, -1.0), std::invalid_argument);
    }
    SUBCASE("deterministic single-segment motion predicts exactly") {
        const MotionSegment seg{0.0, 50.0, {1000.0, -500.0}, 17.0, 2.1};
        for (double dt = 0.0; dt <= 50.0; dt += 7.3) {
            const PolarPoint p = predict_position(seg, dt);
            const PolarPoint q = position_at(std::span(&seg, 1), dt);
            CHECK(p.r == doctest::Approx(q.r).epsilon(1e-12));
            CHECK(relative_angle(p.phi, q.phi) < 1e-12);
        }
    }
    SUBCASE("one-second error is bounded by the distance traveled") {
        // Both the real and the extrapolated position stay within s*dt of the
        // divergence point, so the error is at most s*dt when the pattern
        // changes at most once in the window and 2*s*dt otherwise (a reversal
        // right after a vanishing pause).
        MobilityParams mp;
        mp.mean_speed_mps = 40.0;
        RandomStream rng(17);
        const auto traj = generate_trajectory(mp, 2000.0, rng);
        RandomStream probe(19);
        for (int i = 0; i < 300; ++i) {
            const double t = probe.uniform(0.0, 1990.0);
            auto it = std::upper_bound(traj.begin(), traj.end(), t,
                                       [](double v, const MotionSegment& s) { return v < s.t_start_s; });
            const MotionSegment& seg = *(it - 1);
            const PolarPoint guess = predict_position(seg, (t - seg.t_start_s) + 1.0);
            const PolarPoint truth = position_at(traj, t + 1.0);
            int boundaries = 0;
            for (auto j = it; j != traj.end() && j->t_start_s <= t + 1.0; ++j) ++boundaries;
            const double bound = boundaries <= 1 ? 40.0 : 80.0;
            CHECK(separation(guess, truth) <= bound + 1e-9);
        }
    }
}

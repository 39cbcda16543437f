#pragma once

#include "crpower/channel.hpp"
#include "crpower/geometry.hpp"

#include <cmath>

namespace crpower {

// Static scene: broadcast power, protected receiver location, SIR thresholds
// and the allowed transmit power range of the cognitive transmitter.
struct Deployment {
    double p_bs_w = 1e5;
    PolarPoint pr_rx{50e3, 0.0};
    double tau_p_db = 30.0;
    double tau_c_db = 3.0;
    // Linear mirrors of the thresholds; refresh via set_thresholds_db.
    double tau_p = std::pow(10.0, 3.0);
    double tau_c = std::pow(10.0, 0.3);
    double p_min_w = 1.0;
    double p_max_w = 100.0;
    ChannelParams channel;
};

void set_thresholds_db(Deployment& dep, double tau_p_db, double tau_c_db);
void validate(const Deployment& dep); // throws std::invalid_argument

enum class SilentReason { forbidden, out_of_range };

// Outcome of the decision ladder: transmit at the region-maximizing power,
// transmit at maximum power, or stay silent.
struct PowerDecision {
    enum class Kind { optimal, max_power, silent };

    Kind kind = Kind::silent;
    double p_ct_w = 0.0; // transmit variants only
    double r_ct_m = 0.0; // transmit variants only
    SilentReason reason = SilentReason::out_of_range;

    bool transmits() const { return kind != Kind::silent; }

    static PowerDecision make_optimal(double p_ct_w, double r_ct_m);
    static PowerDecision make_max_power(double p_ct_w, double r_ct_m);
    static PowerDecision make_silent(SilentReason why);

    bool operator==(const PowerDecision&) const = default;
};

// ---- Equal-exponent closed forms ------------------------------------------

// Radius of the protection disk around the primary receiver,
// r1 * (tau_p * p_ct / p_bs)^(1/alpha). Strictly increasing in p_ct.
double forbidden_radius(double p_ct_w, const Deployment& dep);

// Radius of the disk around the cognitive receiver within which the
// transmitter still clears tau_c: r2 * (p_ct / (tau_c * p_bs))^(1/alpha).
double decodable_radius(double p_ct_w, double r2_m, const Deployment& dep);

// Tangency residuals at the power bounds: forbidden + decodable - d_pc
// evaluated at p_min (f) and p_max (g). The power-bounded optimum exists
// exactly when f <= 0 and g >= 0.
double f_extreme(double r2_m, double theta_pc, const Deployment& dep);
double g_extreme(double r2_m, double theta_pc, const Deployment& dep);

// Closed-form tangency power (d_pc / lever)^alpha with no range test.
double optimal_power_unclamped(double r2_m, double theta_pc, const Deployment& dep);

struct OptimalPower {
    enum class Status { ok, infeasible_forbidden, infeasible_separated };
    Status status = Status::ok;
    double p_w = 0.0; // valid when status == ok, clamped into [p_min, p_max]
    double f_m = 0.0;
    double g_m = 0.0;
};

OptimalPower optimal_power(double r2_m, double theta_pc, const Deployment& dep);

// Largest disk centered at the cognitive receiver that both clears tau_c and
// avoids the protection disk: max(0, min(decodable, d_pc - forbidden)).
double concurrent_radius(double p_ct_w, double r2_m, double theta_pc, const Deployment& dep);

// ---- dB-domain (log-distance) forms ---------------------------------------

// Distance thresholds obtained by inverting the dB SIR constraints at a given
// shadowing offset x: the protection distance the transmitter must exceed and
// the decodable distance it must stay within. Reduces to forbidden_radius /
// decodable_radius when sigma-offset is 0 and the exponents match.
struct ShadowThresholds {
    double d12_min_m = 0.0;
    double d22_max_m = 0.0;
};

ShadowThresholds shadow_thresholds(double p_ct_dbw, double r2_m, double x_sigma_db,
                                   const Deployment& dep);

// Tangency power of the dB-domain constraint pair, returned in watts.
double optimal_power_shadow(double r1_m, double r2_m, double theta_pc, double x_sigma_db,
                            const Deployment& dep);

// ---- Planning view ---------------------------------------------------------

// Radius/power computations behind the decision ladder. Uses the closed forms
// when the exponents match and the planning offset is zero, the dB-domain
// forms otherwise; the two coincide in the overlap.
class Planner {
public:
    explicit Planner(const Deployment& dep, double plan_x_db = 0.0);

    double forbidden(double p_ct_w) const;
    double decodable(double p_ct_w, double r2_m) const;
    double optimal_unclamped(double r2_m, double theta_pc) const;
    double f_extreme(double r2_m, double theta_pc) const;
    double g_extreme(double r2_m, double theta_pc) const;
    double r_max(double r2_m) const; // decodable range at p_max
    double concurrent_radius(double p_ct_w, double r2_m, double theta_pc) const;
    bool db_route() const { return db_; }

private:
    const Deployment* dep_;
    double x_;
    bool db_;
};

// ---- Decision algorithms ---------------------------------------------------

// Three-branch ladder for a known receiver position. The transmitter position
// supplies d22. plan_x_db is the shadowing offset the controller plans at
// (0 = median channel).
PowerDecision decide_fixed(const PolarPoint& crx, const PolarPoint& ctx,
                           const Deployment& dep, double plan_x_db = 0.0);

struct DecisionCache {
    bool valid = false;
    PowerDecision decision;
};

// Mobile variant: keeps the cached transmit decision while the receiver stays
// inside both the cached concurrent-transmission region and the current
// decodable range, recomputes via decide_fixed otherwise.
PowerDecision decide_mobile(DecisionCache& cache, const PolarPoint& crx,
                            const PolarPoint& ctx, const Deployment& dep,
                            double plan_x_db = 0.0);

} // namespace crpower

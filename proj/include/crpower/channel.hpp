#pragma once

#include "crpower/rng.hpp"

namespace crpower {

// Propagation constants. alpha_p applies to broadcast (primary) transmissions,
// alpha_c to the cognitive link; the equal-exponent SIR helpers below require
// alpha_p == alpha_c, the dB-domain path does not.
struct ChannelParams {
    double alpha_p = 3.0;
    double alpha_c = 3.0;
    double g_t = 1.0;
    double g_r = 1.0;
    double h_t_m = 1.0;
    double h_r_m = 1.0;
    double sigma_db = 0.0; // per-link shadowing standard deviation
    double d0_m = 1.0;     // log-distance reference; PL(d0) is taken as 0 dB
};

// Throws std::invalid_argument on out-of-range values or alpha_p > alpha_c.
void validate(const ChannelParams& p);

enum class Link { pr, cr };

double db_from_linear(double x);
double linear_from_db(double x_db);

// Two-ray ground model: P_t * G_t * G_r * h_t^2 * h_r^2 / d^alpha.
double received_power_tworay(double p_t_w, double d_m, const ChannelParams& p, Link which);

// Linear SIR at the primary receiver, P_bs * d12^alpha / (P_ct * r1^alpha).
// Equal-exponent model with unity gains cancelled.
double sir_primary(double p_bs_w, double p_ct_w, double d12_m, double r1_m,
                   const ChannelParams& p);

// Linear SIR at the cognitive receiver, P_ct * r2^alpha / (P_bs * d22^alpha).
double sir_cr(double p_ct_w, double p_bs_w, double d22_m, double r2_m,
              const ChannelParams& p);

// Log-distance received power in dBW: p - (10*alpha*log10(d/d0) + X_sigma).
// Building block for the dB-domain SIRs (difference of two such terms).
double shadowed_sir_terms(double p_dbw, double d_m, double alpha, double x_sigma_db,
                          const ChannelParams& p);

// One shadowing difference term, N(0, sqrt(2)*sigma) dB. sigma 0 returns 0
// without consuming randomness.
double sample_shadowing(RandomStream& rng, double sigma_db);

} // namespace crpower

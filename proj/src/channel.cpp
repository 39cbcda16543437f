#include "crpower/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace crpower {

void validate(const ChannelParams& p) {
    if (!(p.alpha_p > 0.0) || !(p.alpha_c > 0.0))
        throw std::invalid_argument("channel: path-loss exponents must be > 0");
    if (p.alpha_p > p.alpha_c)
        throw std::invalid_argument("channel: alpha_p must not exceed alpha_c");
    if (!(p.sigma_db >= 0.0))
        throw std::invalid_argument("channel: sigma_db must be >= 0");
    if (!(p.d0_m > 0.0))
        throw std::invalid_argument("channel: d0_m must be > 0");
    if (!(p.g_t > 0.0) || !(p.g_r > 0.0) || !(p.h_t_m > 0.0) || !(p.h_r_m > 0.0))
        throw std::invalid_argument("channel: gains and antenna heights must be > 0");
}

double db_from_linear(double x) { return 10.0 * std::log10(x); }
double linear_from_db(double x_db) { return std::pow(10.0, x_db / 10.0); }

namespace {
double require_equal_alpha(const ChannelParams& p) {
    if (p.alpha_p != p.alpha_c)
        throw std::domain_error("equal-exponent SIR requires alpha_p == alpha_c");
    return p.alpha_p;
}
} // namespace

double received_power_tworay(double p_t_w, double d_m, const ChannelParams& p, Link which) {
    if (!(p_t_w > 0.0)) throw std::domain_error("received_power_tworay: p_t must be > 0");
    if (!(d_m > 0.0)) throw std::domain_error("received_power_tworay: singular propagation distance");
    const double alpha = which == Link::pr ? p.alpha_p : p.alpha_c;
    const double h2 = p.h_t_m * p.h_t_m * p.h_r_m * p.h_r_m;
    return p_t_w * p.g_t * p.g_r * h2 / std::pow(d_m, alpha);
}

double sir_primary(double p_bs_w, double p_ct_w, double d12_m, double r1_m,
                   const ChannelParams& p) {
    if (!(p_bs_w > 0.0) || !(p_ct_w > 0.0) || !(d12_m > 0.0) || !(r1_m > 0.0))
        throw std::domain_error("sir_primary: inputs must be > 0");
    const double alpha = require_equal_alpha(p);
    // Ratio-first form: rescaling both powers by a common factor cancels.
    return (p_bs_w / p_ct_w) * std::pow(d12_m / r1_m, alpha);
}

double sir_cr(double p_ct_w, double p_bs_w, double d22_m, double r2_m,
              const ChannelParams& p) {
    if (!(p_ct_w > 0.0) || !(p_bs_w > 0.0) || !(d22_m > 0.0) || !(r2_m > 0.0))
        throw std::domain_error("sir_cr: inputs must be > 0");
    const double alpha = require_equal_alpha(p);
    return (p_ct_w / p_bs_w) * std::pow(r2_m / d22_m, alpha);
}

double shadowed_sir_terms(double p_dbw, double d_m, double alpha, double x_sigma_db,
                          const ChannelParams& p) {
    if (!(d_m > 0.0)) throw std::domain_error("shadowed_sir_terms: distance must be > 0");
    return p_dbw - (10.0 * alpha * std::log10(d_m / p.d0_m) + x_sigma_db);
}

double sample_shadowing(RandomStream& rng, double sigma_db) {
    if (!(sigma_db >= 0.0)) throw std::domain_error("sample_shadowing: sigma must be >= 0");
    if (sigma_db == 0.0) return 0.0;
    return rng.gaussian(std::sqrt(2.0) * sigma_db);
}

} // namespace crpower

#include "crpower/powerctl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crpower {

void set_thresholds_db(Deployment& dep, double tau_p_db, double tau_c_db) {
    dep.tau_p_db = tau_p_db;
    dep.tau_c_db = tau_c_db;
    dep.tau_p = linear_from_db(tau_p_db);
    dep.tau_c = linear_from_db(tau_c_db);
}

void validate(const Deployment& dep) {
    validate(dep.channel);
    if (!(dep.p_bs_w > 0.0))
        throw std::invalid_argument("deployment: p_bs must be > 0");
    if (!(dep.p_min_w > 0.0) || !(dep.p_min_w <= dep.p_max_w))
        throw std::invalid_argument("deployment: need 0 < p_min <= p_max");
    if (!(dep.tau_p > 0.0) || !(dep.tau_c > 0.0))
        throw std::invalid_argument("deployment: linear thresholds must be > 0");
}

PowerDecision PowerDecision::make_optimal(double p_ct_w, double r_ct_m) {
    PowerDecision d;
    d.kind = Kind::optimal;
    d.p_ct_w = p_ct_w;
    d.r_ct_m = r_ct_m;
    return d;
}

PowerDecision PowerDecision::make_max_power(double p_ct_w, double r_ct_m) {
    PowerDecision d;
    d.kind = Kind::max_power;
    d.p_ct_w = p_ct_w;
    d.r_ct_m = r_ct_m;
    return d;
}

PowerDecision PowerDecision::make_silent(SilentReason why) {
    PowerDecision d;
    d.kind = Kind::silent;
    d.reason = why;
    return d;
}

namespace {

double equal_alpha(const Deployment& dep) {
    if (dep.channel.alpha_p != dep.channel.alpha_c)
        throw std::domain_error("equal-exponent power control requires alpha_p == alpha_c");
    return dep.channel.alpha_p;
}

// 10*log10(d/d0); the paper-side distance-in-dB convention.
double dist_db(double d_m, const Deployment& dep) {
    return 10.0 * std::log10(d_m / dep.channel.d0_m);
}

} // namespace

double forbidden_radius(double p_ct_w, const Deployment& dep) {
    const double alpha = equal_alpha(dep);
    return dep.pr_rx.r * std::pow(dep.tau_p * p_ct_w / dep.p_bs_w, 1.0 / alpha);
}

double decodable_radius(double p_ct_w, double r2_m, const Deployment& dep) {
    const double alpha = equal_alpha(dep);
    return r2_m * std::pow(p_ct_w / (dep.tau_c * dep.p_bs_w), 1.0 / alpha);
}

double f_extreme(double r2_m, double theta_pc, const Deployment& dep) {
    return forbidden_radius(dep.p_min_w, dep) + decodable_radius(dep.p_min_w, r2_m, dep) -
           separation(dep.pr_rx.r, r2_m, theta_pc);
}

double g_extreme(double r2_m, double theta_pc, const Deployment& dep) {
    return forbidden_radius(dep.p_max_w, dep) + decodable_radius(dep.p_max_w, r2_m, dep) -
           separation(dep.pr_rx.r, r2_m, theta_pc);
}

double optimal_power_unclamped(double r2_m, double theta_pc, const Deployment& dep) {
    const double alpha = equal_alpha(dep);
    // Both disk radii scale as p^(1/alpha), so the tangency condition
    // forbidden(p) + decodable(p) = d_pc solves in closed form.
    const double lever = dep.pr_rx.r * std::pow(dep.tau_p / dep.p_bs_w, 1.0 / alpha) +
                         r2_m * std::pow(1.0 / (dep.tau_c * dep.p_bs_w), 1.0 / alpha);
    const double d_pc = separation(dep.pr_rx.r, r2_m, theta_pc);
    return std::pow(d_pc / lever, alpha);
}

OptimalPower optimal_power(double r2_m, double theta_pc, const Deployment& dep) {
    OptimalPower out;
    out.f_m = f_extreme(r2_m, theta_pc, dep);
    out.g_m = g_extreme(r2_m, theta_pc, dep);
    if (out.f_m > 0.0) {
        out.status = OptimalPower::Status::infeasible_forbidden;
        return out;
    }
    if (out.g_m < 0.0) {
        out.status = OptimalPower::Status::infeasible_separated;
        return out;
    }
    // In range by the f/g test; the clamp only pins rounding at the bounds.
    out.p_w = std::clamp(optimal_power_unclamped(r2_m, theta_pc, dep), dep.p_min_w, dep.p_max_w);
    return out;
}

double concurrent_radius(double p_ct_w, double r2_m, double theta_pc, const Deployment& dep) {
    const double d_pc = separation(dep.pr_rx.r, r2_m, theta_pc);
    return std::max(0.0, std::min(decodable_radius(p_ct_w, r2_m, dep),
                                  d_pc - forbidden_radius(p_ct_w, dep)));
}

ShadowThresholds shadow_thresholds(double p_ct_dbw, double r2_m, double x_sigma_db,
                                   const Deployment& dep) {
    if (!(r2_m > 0.0)) throw std::domain_error("shadow_thresholds: r2 must be > 0");
    const auto& ch = dep.channel;
    const double p_bs_db = db_from_linear(dep.p_bs_w);
    const double ten_a2 = 10.0 * ch.alpha_c;
    ShadowThresholds t;
    t.d12_min_m = ch.d0_m * std::pow(10.0, (p_ct_dbw + ch.alpha_p * dist_db(dep.pr_rx.r, dep) +
                                            dep.tau_p_db + x_sigma_db - p_bs_db) /
                                               ten_a2);
    t.d22_max_m = ch.d0_m * std::pow(10.0, (p_ct_dbw + ch.alpha_p * dist_db(r2_m, dep) -
                                            dep.tau_c_db - x_sigma_db - p_bs_db) /
                                               ten_a2);
    return t;
}

double optimal_power_shadow(double r1_m, double r2_m, double theta_pc, double x_sigma_db,
                            const Deployment& dep) {
    if (!(r1_m > 0.0) || !(r2_m > 0.0))
        throw std::domain_error("optimal_power_shadow: radii must be > 0");
    const auto& ch = dep.channel;
    const double p_bs_db = db_from_linear(dep.p_bs_w);
    const double ten_a2 = 10.0 * ch.alpha_c;
    const double term_p =
        std::pow(10.0, (ch.alpha_p * dist_db(r1_m, dep) + dep.tau_p_db + x_sigma_db - p_bs_db) / ten_a2);
    const double term_c =
        std::pow(10.0, (ch.alpha_p * dist_db(r2_m, dep) - dep.tau_c_db - x_sigma_db - p_bs_db) / ten_a2);
    const double d_pc = separation(r1_m, r2_m, theta_pc);
    const double p_db = ten_a2 * std::log10((d_pc / ch.d0_m) / (term_p + term_c));
    return linear_from_db(p_db);
}

Planner::Planner(const Deployment& dep, double plan_x_db)
    : dep_(&dep),
      x_(plan_x_db),
      db_(dep.channel.alpha_p != dep.channel.alpha_c || plan_x_db != 0.0) {}

double Planner::forbidden(double p_ct_w) const {
    if (!db_) return forbidden_radius(p_ct_w, *dep_);
    return shadow_thresholds(db_from_linear(p_ct_w), dep_->pr_rx.r, x_, *dep_).d12_min_m;
}

double Planner::decodable(double p_ct_w, double r2_m) const {
    if (!db_) return decodable_radius(p_ct_w, r2_m, *dep_);
    return shadow_thresholds(db_from_linear(p_ct_w), r2_m, x_, *dep_).d22_max_m;
}

double Planner::optimal_unclamped(double r2_m, double theta_pc) const {
    if (!db_) return optimal_power_unclamped(r2_m, theta_pc, *dep_);
    return optimal_power_shadow(dep_->pr_rx.r, r2_m, theta_pc, x_, *dep_);
}

double Planner::f_extreme(double r2_m, double theta_pc) const {
    return forbidden(dep_->p_min_w) + decodable(dep_->p_min_w, r2_m) -
           separation(dep_->pr_rx.r, r2_m, theta_pc);
}

double Planner::g_extreme(double r2_m, double theta_pc) const {
    return forbidden(dep_->p_max_w) + decodable(dep_->p_max_w, r2_m) -
           separation(dep_->pr_rx.r, r2_m, theta_pc);
}

double Planner::r_max(double r2_m) const { return decodable(dep_->p_max_w, r2_m); }

double Planner::concurrent_radius(double p_ct_w, double r2_m, double theta_pc) const {
    const double d_pc = separation(dep_->pr_rx.r, r2_m, theta_pc);
    return std::max(0.0, std::min(decodable(p_ct_w, r2_m), d_pc - forbidden(p_ct_w)));
}

PowerDecision decide_fixed(const PolarPoint& crx, const PolarPoint& ctx,
                           const Deployment& dep, double plan_x_db) {
    const Planner plan(dep, plan_x_db);
    const double r2 = crx.r;
    const double theta = relative_angle(dep.pr_rx.phi, crx.phi);
    const double d_pc = separation(dep.pr_rx, crx);
    const double d22 = separation(ctx, crx);
    const double f = plan.f_extreme(r2, theta);
    const double g = plan.g_extreme(r2, theta);
    const double r_max = plan.r_max(r2);
    if (f <= 0.0 && g >= 0.0 && d22 <= r_max) {
        const double p = std::clamp(plan.optimal_unclamped(r2, theta), dep.p_min_w, dep.p_max_w);
        const double r_ct = std::max(0.0, std::min(plan.decodable(p, r2), d_pc - plan.forbidden(p)));
        return PowerDecision::make_optimal(p, r_ct);
    }
    if (g < 0.0 && d22 <= r_max) {
        const double r_ct = std::max(0.0, std::min(r_max, d_pc - plan.forbidden(dep.p_max_w)));
        return PowerDecision::make_max_power(dep.p_max_w, r_ct);
    }
    if (f > 0.0) return PowerDecision::make_silent(SilentReason::forbidden);
    return PowerDecision::make_silent(SilentReason::out_of_range);
}

PowerDecision decide_mobile(DecisionCache& cache, const PolarPoint& crx,
                            const PolarPoint& ctx, const Deployment& dep,
                            double plan_x_db) {
    const double d22 = separation(ctx, crx);
    // r_max depends on the current r2, so it is recomputed every call.
    const double r_max = Planner(dep, plan_x_db).r_max(crx.r);
    if (cache.valid && cache.decision.transmits() && d22 <= cache.decision.r_ct_m &&
        d22 <= r_max) {
        return cache.decision;
    }
    cache.decision = decide_fixed(crx, ctx, dep, plan_x_db);
    cache.valid = true;
    return cache.decision;
}

} // namespace crpower

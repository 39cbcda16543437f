// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected values come from the independent reference computations
// in oracle.hpp, never from the code paths under test.

#include "crpower/sweep.hpp"

#include "oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace crpower;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double th60 = pi / 3.0;

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s  %2d  %s%s%s\n", ok ? "PASS" : "FAIL", index, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct CellKey {
    double speed;
    double power; // -1 for the optimal controller
    bool operator<(const CellKey& o) const {
        return speed != o.speed ? speed < o.speed : power < o.power;
    }
};

std::map<CellKey, PdrAggregate> by_cell(const std::vector<PdrAggregate>& aggs) {
    std::map<CellKey, PdrAggregate> out;
    for (const PdrAggregate& a : aggs) {
        const double p = a.policy == PolicyKind::optimal_control ? -1.0 : a.p_fixed_w;
        out[{a.speed_mps, p}] = a;
    }
    return out;
}

// ---- criteria ---------------------------------------------------------------

void criterion_1_decodable_radius() {
    const Deployment dep;
    const double r47 = decodable_radius(100.0, 47e3, dep);
    const double r54 = decodable_radius(100.0, 54e3, dep);
    const bool ok = r47 >= 3650.0 && r47 <= 3800.0 && r54 >= 4200.0 && r54 <= 4350.0;
    report(1, "decodable radius at 47/54 km", ok,
           "r(47km)=" + fmt(r47) + " m, r(54km)=" + fmt(r54) + " m");
}

void criterion_2_closed_form_vs_oracle() {
    const Deployment dep;
    const oracle::Scene scene;
    const auto t0 = std::chrono::steady_clock::now();

    int cells = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 100; ++j) {
            const double r2 = 40e3 + 20e3 * i / 99.0;
            const double theta = pi * j / 99.0;
            const OptimalPower res = optimal_power(r2, theta, dep);
            if (res.status != OptimalPower::Status::ok) continue;
            ++cells;
            const double ref = oracle::tangency_power(scene, r2, theta);
            worst = std::max(worst, std::fabs(res.p_w - ref) / ref);
        }
    }
    bool ok = cells > 500 && worst <= 1e-6;

    Deployment shadow = dep;
    shadow.channel.alpha_c = 4.0;
    const oracle::ShadowScene sscene;
    RandomStream rng(2024);
    int accepted = 0;
    double worst_db = 0.0;
    while (accepted < 1000) {
        const double r2 = rng.uniform(5e3, 100e3);
        const double theta = rng.uniform(0.02, pi);
        const Planner plan(shadow, 0.0);
        if (plan.f_extreme(r2, theta) > 0.0 || plan.g_extreme(r2, theta) < 0.0) continue;
        ++accepted;
        const double closed = db_from_linear(optimal_power_shadow(50e3, r2, theta, 0.0, shadow));
        const double ref = oracle::shadow_tangency_dbw(sscene, r2, theta, 0.0,
                                                       db_from_linear(shadow.p_min_w),
                                                       db_from_linear(shadow.p_max_w));
        worst_db = std::max(worst_db, std::fabs(closed - ref) / std::max(1.0, std::fabs(ref)));
    }
    ok = ok && worst_db <= 1e-9;

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(2, "closed forms match the bisection oracles", ok && secs < 5.0,
           "grid rel err " + fmt(worst) + ", shadow rel err " + fmt(worst_db) + ", " +
               fmt(secs) + " s");
}

void criterion_3_radius_sum_identity() {
    const Deployment dep;
    double worst = 0.0;
    int cells = 0;
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 100; ++j) {
            const double r2 = 40e3 + 20e3 * i / 99.0;
            const double theta = pi * j / 99.0;
            const OptimalPower res = optimal_power(r2, theta, dep);
            if (res.status != OptimalPower::Status::ok) continue;
            ++cells;
            const double d_pc = separation(dep.pr_rx.r, r2, theta);
            const double sum = forbidden_radius(res.p_w, dep) + decodable_radius(res.p_w, r2, dep);
            worst = std::max(worst, std::fabs(sum - d_pc) / d_pc);
        }
    }
    report(3, "radius-sum identity at the optimal power", cells > 500 && worst <= 1e-9,
           std::to_string(cells) + " feasible cells, worst rel err " + fmt(worst));
}

void criterion_4_clamp_plateau() {
    const Deployment dep;
    const oracle::Scene scene;
    const OptimalPower at60 = optimal_power(50e3, th60, dep);
    bool ok = at60.status == OptimalPower::Status::ok;
    const double ref = oracle::tangency_power(scene, 50e3, th60);
    ok = ok && std::fabs(at60.p_w - ref) / ref <= 1e-9 && std::fabs(at60.p_w - 79.5) < 0.1;

    // First angle where even maximum power cannot separate the disks.
    double onset_deg = -1.0;
    for (double deg = 60.0; deg <= 70.0; deg += 0.001) {
        if (g_extreme(50e3, deg * pi / 180.0, dep) < 0.0) {
            onset_deg = deg;
            break;
        }
    }
    ok = ok && std::fabs(onset_deg - 65.3) <= 0.5;
    for (int deg = 66; deg <= 90; ++deg) {
        const OptimalPower res = optimal_power(50e3, deg * pi / 180.0, dep);
        ok = ok && res.status == OptimalPower::Status::infeasible_separated &&
             optimal_power_unclamped(50e3, deg * pi / 180.0, dep) > dep.p_max_w;
    }
    report(4, "unclamped optimum at 60 deg, clamp onset near 65.3 deg", ok,
           "P*(60deg)=" + fmt(at60.p_w) + " W, onset=" + fmt(onset_deg) + " deg");
}

void criterion_5_radius_unimodality() {
    const Deployment dep;
    const oracle::Scene scene;
    bool ok = true;
    double peak50 = 0.0;
    for (double r2_km : {47.0, 50.0, 54.0}) {
        const double r2 = r2_km * 1e3;
        const double p_star = optimal_power(r2, th60, dep).p_w;
        std::vector<double> grid;
        for (int p = 1; p <= 100; ++p) grid.push_back(p);
        grid.push_back(p_star);
        std::sort(grid.begin(), grid.end());
        std::vector<double> radii;
        for (double p : grid) radii.push_back(concurrent_radius(p, r2, th60, dep));
        const auto max_it = std::max_element(radii.begin(), radii.end());
        const size_t argmax = static_cast<size_t>(max_it - radii.begin());
        ok = ok && grid[argmax] == p_star;
        for (size_t i = 1; i < radii.size(); ++i) {
            if (i <= argmax)
                ok = ok && radii[i] > radii[i - 1];
            else // strictly falling until the radius floors at zero
                ok = ok && (radii[i] < radii[i - 1] || (radii[i] == 0.0 && radii[i - 1] == 0.0));
        }
        if (r2_km == 50.0) {
            peak50 = *max_it;
            // Independent value: protection gap at the bisection power.
            const double p_ref = oracle::tangency_power(scene, r2, th60);
            const double expected =
                oracle::chord(scene.r1_m, r2, th60) - oracle::protect_radius(scene, p_ref);
            ok = ok && std::fabs(peak50 - expected) <= 1.0;
        }
    }
    report(5, "concurrent radius rises to a unique peak at P*", ok,
           "peak at 50 km = " + fmt(peak50) + " m");
}

AppConfig sweep_config() {
    AppConfig cfg;
    // Defaults already carry the reference scene, speeds {10,20,30,40},
    // fixed powers {10..100} and 20 seeds.
    return cfg;
}

void criterion_6789(std::vector<PdrAggregate>& out_aggs, std::vector<PdrAggregate>& out_shadow) {
    const AppConfig cfg = sweep_config();
    const auto t0 = std::chrono::steady_clock::now();
    const auto runs = run_pdr_sweep(cfg, ExecMode::parallel);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto aggs = aggregate_pdr(runs);
    out_aggs = aggs;
    const auto cells = by_cell(aggs);

    // 6: the controller's mean PDR is at least every fixed power's, per cell.
    bool ok6 = true;
    std::string detail6;
    for (double speed : cfg.speeds_mps) {
        const PdrAggregate& opt = cells.at({speed, -1.0});
        for (double p : cfg.fixed_powers_w) {
            const PdrAggregate& fx = cells.at({speed, p});
            if (opt.mean_pdr < fx.mean_pdr) {
                ok6 = false;
                detail6 += " [" + fmt(speed) + " m/s, " + fmt(p) + " W: opt " +
                           fmt(opt.mean_pdr) + " < fixed " + fmt(fx.mean_pdr) + "]";
            }
        }
    }
    report(6, "controller PDR dominates every fixed power", ok6 && secs < 60.0,
           "sweep " + fmt(secs) + " s" + detail6);

    // 7: controller PDR non-increasing in speed, one inversion within 1 SE.
    bool ok7 = true;
    int inversions = 0;
    std::string detail7;
    for (size_t i = 1; i < cfg.speeds_mps.size(); ++i) {
        const PdrAggregate& lo = cells.at({cfg.speeds_mps[i - 1], -1.0});
        const PdrAggregate& hi = cells.at({cfg.speeds_mps[i], -1.0});
        detail7 += fmt(lo.mean_pdr) + " ";
        if (hi.mean_pdr > lo.mean_pdr) {
            ++inversions;
            const double se = std::sqrt(lo.se_pdr * lo.se_pdr + hi.se_pdr * hi.se_pdr);
            if (hi.mean_pdr - lo.mean_pdr > se) ok7 = false;
        }
    }
    detail7 += fmt(cells.at({cfg.speeds_mps.back(), -1.0}).mean_pdr);
    ok7 = ok7 && inversions <= 1;
    report(7, "controller PDR degrades with speed", ok7, "means: " + detail7);

    // 8: fixed-power PDR is exactly zero above the primary-SIR threshold.
    const Deployment dep = cfg.deployment;
    const double d12 = separation(cfg.ctx_pos, dep.pr_rx);
    const double threshold = oracle::bisect(
        [&](double p) {
            return dep.tau_p - sir_primary(dep.p_bs_w, p, d12, dep.pr_rx.r, dep.channel);
        },
        1.0, 1000.0);
    bool ok8 = std::fabs(threshold - 100.0) < 1e-6;
    std::uint64_t above_delivered = 0;
    for (const PdrRun& r : runs) {
        if (r.policy != PolicyKind::fixed_power) continue;
        if (sir_primary(dep.p_bs_w, r.p_fixed_w, d12, dep.pr_rx.r, dep.channel) > dep.tau_p)
            continue;
        above_delivered += r.metrics.packets_delivered;
        ok8 = ok8 && r.metrics.pdr == 0.0;
    }
    report(8, "hard cutoff above the oracle threshold power", ok8,
           "threshold=" + fmt(threshold) + " W, deliveries above it: " +
               std::to_string(above_delivered));

    // 9: shadowing comparison at 30 m/s.
    AppConfig shadow_cfg = sweep_config();
    apply_pdr_shadow_presets(shadow_cfg);
    const auto shadow_runs = run_pdr_sweep(shadow_cfg, ExecMode::parallel);
    const auto shadow_aggs = aggregate_pdr(shadow_runs);
    out_shadow = shadow_aggs;
    const auto shadow_cells = by_cell(shadow_aggs);

    bool ok9 = true;
    std::string detail9;
    bool any_above_positive = false;
    for (double p : shadow_cfg.fixed_powers_w) {
        const double mean_shadow = shadow_cells.at({30.0, p}).mean_pdr;
        const bool above =
            !(sir_primary(dep.p_bs_w, p, d12, dep.pr_rx.r, dep.channel) > dep.tau_p);
        if (above) {
            any_above_positive = any_above_positive || mean_shadow > 0.0;
        } else {
            const double mean_clear = cells.at({30.0, p}).mean_pdr;
            if (!(mean_shadow < mean_clear)) {
                ok9 = false;
                detail9 += " [" + fmt(p) + " W: shadow " + fmt(mean_shadow) + " !< " +
                           fmt(mean_clear) + "]";
            }
        }
    }
    if (!any_above_positive) {
        ok9 = false;
        detail9 += " [no delivery above the deterministic threshold]";
    }
    const double opt_shadow = shadow_cells.at({30.0, -1.0}).mean_pdr;
    for (double p : shadow_cfg.fixed_powers_w) {
        if (opt_shadow < shadow_cells.at({30.0, p}).mean_pdr) {
            ok9 = false;
            detail9 += " [controller below fixed " + fmt(p) + " W]";
        }
    }
    report(9, "shadowing lowers PDR, softens the cutoff, keeps dominance", ok9,
           "controller mean " + fmt(opt_shadow) + detail9);
}

void criterion_10_determinism() {
    AppConfig cfg;
    apply_override(cfg, "sim_time_s", "100");
    apply_override(cfg, "n_seeds", "3");
    apply_override(cfg, "speeds_mps", "20");
    apply_override(cfg, "fixed_powers_w", "50,100");
    apply_override(cfg, "r2_step_km", "0.5");

    auto render_all = [&]() {
        std::ostringstream os;
        write_surface_csv(os, cfg, evaluate_surface(cfg, ExecMode::parallel));
        write_slice_csv(os, cfg, evaluate_slice(cfg, ExecMode::parallel));
        write_radius_sweep_csv(os, cfg, evaluate_radius_sweep(cfg, ExecMode::parallel));
        const auto runs = run_pdr_sweep(cfg, ExecMode::parallel);
        write_pdr_csv(os, cfg, "pdr", runs, aggregate_pdr(runs));
        write_run_csv(os, cfg, run_scenario(make_scenario(cfg)));
        return os.str();
    };
    const std::string a = render_all();
    const std::string b = render_all();
    report(10, "reruns produce byte-identical CSV", !a.empty() && a == b,
           std::to_string(a.size()) + " bytes compared");
}

void criterion_11_threshold_reduction() {
    const Deployment dep; // sigma 0, equal exponents
    RandomStream rng(777);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double p = rng.uniform(0.5, 200.0);
        const double r2 = rng.uniform(1e3, 120e3);
        const ShadowThresholds t = shadow_thresholds(db_from_linear(p), r2, 0.0, dep);
        worst = std::max(worst, std::fabs(t.d12_min_m - forbidden_radius(p, dep)) /
                                    forbidden_radius(p, dep));
        worst = std::max(worst, std::fabs(t.d22_max_m - decodable_radius(p, r2, dep)) /
                                    decodable_radius(p, r2, dep));
    }
    report(11, "shadow thresholds reduce to the closed-form radii", worst <= 1e-9,
           "worst rel err " + fmt(worst));
}

} // namespace

int main() {
    criterion_1_decodable_radius();
    criterion_2_closed_form_vs_oracle();
    criterion_3_radius_sum_identity();
    criterion_4_clamp_plateau();
    criterion_5_radius_unimodality();
    std::vector<PdrAggregate> aggs, shadow_aggs;
    criterion_6789(aggs, shadow_aggs);
    criterion_10_determinism();
    criterion_11_threshold_reduction();
    std::printf("%s (%d criteria failed)\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}

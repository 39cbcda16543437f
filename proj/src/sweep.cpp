#include "crpower/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crpower {

namespace {

constexpr double deg_per_rad = 180.0 / std::numbers::pi;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> grid_values(double lo, double hi, double step) {
    const auto n = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) out.push_back(lo + step * static_cast<double>(i));
    return out;
}

const char* status_name(OptimalPower::Status s) {
    switch (s) {
        case OptimalPower::Status::ok: return "feasible";
        case OptimalPower::Status::infeasible_separated: return "max_power";
        case OptimalPower::Status::infeasible_forbidden: return "forbidden";
    }
    return "?";
}

SurfaceCell evaluate_cell(const AppConfig& cfg, const Planner& plan, double r2_km,
                          double theta_deg, double d22_m) {
    const Deployment& dep = cfg.deployment;
    const double r2 = r2_km * 1e3;
    const double theta = theta_deg / deg_per_rad;
    SurfaceCell cell;
    cell.r2_km = r2_km;
    cell.theta_deg = theta_deg;
    cell.d22_m = d22_m;
    cell.r_max_m = plan.r_max(r2);
    const double f = plan.f_extreme(r2, theta);
    const double g = plan.g_extreme(r2, theta);
    if (f > 0.0) {
        cell.status = OptimalPower::Status::infeasible_forbidden;
        return cell;
    }
    cell.p_unclamped_w = plan.optimal_unclamped(r2, theta);
    if (g < 0.0) {
        cell.status = OptimalPower::Status::infeasible_separated;
        cell.p_clamped_w = dep.p_max_w;
    } else {
        cell.status = OptimalPower::Status::ok;
        cell.p_clamped_w = std::clamp(cell.p_unclamped_w, dep.p_min_w, dep.p_max_w);
    }
    return cell;
}

void write_comment_block(std::ostream& os, const AppConfig& cfg, const std::string& subcommand) {
    os << "# crpower " << subcommand << "\n";
    for (const auto& [key, value] : resolved_entries(cfg)) os << "# " << key << "=" << value << "\n";
}

const char* policy_name(PolicyKind k) {
    return k == PolicyKind::optimal_control ? "optimal" : "fixed";
}

} // namespace

void set_thread_count(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

std::vector<SimMetrics> run_batch(const std::vector<ScenarioConfig>& scenarios, ExecMode mode) {
    for (const ScenarioConfig& sc : scenarios) validate(sc); // fail before the parallel region
    std::vector<SimMetrics> out(scenarios.size());
    const auto n = static_cast<std::int64_t>(scenarios.size());
    if (mode == ExecMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t i = 0; i < n; ++i) out[static_cast<size_t>(i)] = run_scenario(scenarios[static_cast<size_t>(i)]);
    } else {
        for (std::int64_t i = 0; i < n; ++i) out[static_cast<size_t>(i)] = run_scenario(scenarios[static_cast<size_t>(i)]);
    }
    return out;
}

std::vector<SurfaceCell> evaluate_surface(const AppConfig& cfg, ExecMode mode) {
    const auto r2s = grid_values(cfg.r2_min_km, cfg.r2_max_km, cfg.r2_step_km);
    const auto thetas = grid_values(cfg.theta_min_deg, cfg.theta_max_deg, cfg.theta_step_deg);
    const Planner plan(cfg.deployment, cfg.planning_margin_db);
    std::vector<SurfaceCell> cells(r2s.size() * thetas.size());
    const auto n = static_cast<std::int64_t>(cells.size());
    const auto n_theta = static_cast<std::int64_t>(thetas.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (mode == ExecMode::parallel)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        const double r2_km = r2s[static_cast<size_t>(i / n_theta)];
        const double theta_deg = thetas[static_cast<size_t>(i % n_theta)];
        cells[static_cast<size_t>(i)] = evaluate_cell(cfg, plan, r2_km, theta_deg, 0.0);
    }
    (void)mode;
    return cells;
}

std::vector<SurfaceCell> evaluate_slice(const AppConfig& cfg, ExecMode mode) {
    const auto r2s = grid_values(cfg.r2_min_km, cfg.r2_max_km, cfg.r2_step_km);
    const Planner plan(cfg.deployment, cfg.planning_margin_db);
    const double theta = cfg.slice_theta_deg / deg_per_rad;
    std::vector<SurfaceCell> cells(r2s.size());
    const auto n = static_cast<std::int64_t>(cells.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (mode == ExecMode::parallel)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        const double r2_km = r2s[static_cast<size_t>(i)];
        // Receiver on the slice ray at azimuth phi_1 + theta.
        const PolarPoint crx(r2_km * 1e3, cfg.deployment.pr_rx.phi + theta);
        const double d22 = separation(cfg.ctx_pos, crx);
        cells[static_cast<size_t>(i)] = evaluate_cell(cfg, plan, r2_km, cfg.slice_theta_deg, d22);
    }
    (void)mode;
    return cells;
}

std::vector<RadiusSweepRow> evaluate_radius_sweep(const AppConfig& cfg, ExecMode mode) {
    const auto powers = grid_values(cfg.p_grid_min_w, cfg.p_grid_max_w, cfg.p_grid_step_w);
    const Planner plan(cfg.deployment, cfg.planning_margin_db);
    const double theta = cfg.slice_theta_deg / deg_per_rad;

    std::vector<RadiusSweepRow> rows;
    for (double r2_km : cfg.r2_list_km) {
        const double r2 = r2_km * 1e3;
        std::vector<double> ps = powers;
        const double f = plan.f_extreme(r2, theta);
        const double g = plan.g_extreme(r2, theta);
        double p_opt = -1.0;
        if (f <= 0.0 && g >= 0.0) {
            p_opt = std::clamp(plan.optimal_unclamped(r2, theta), cfg.deployment.p_min_w,
                               cfg.deployment.p_max_w);
            ps.push_back(p_opt);
            std::sort(ps.begin(), ps.end());
        }
        const size_t base = rows.size();
        rows.resize(base + ps.size());
        const auto n = static_cast<std::int64_t>(ps.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (mode == ExecMode::parallel)
#endif
        for (std::int64_t i = 0; i < n; ++i) {
            const double p = ps[static_cast<size_t>(i)];
            rows[base + static_cast<size_t>(i)] = {r2_km, cfg.slice_theta_deg, p,
                                                   plan.concurrent_radius(p, r2, theta),
                                                   p == p_opt};
        }
    }
    (void)mode;
    return rows;
}

std::vector<PdrRun> run_pdr_sweep(const AppConfig& cfg, ExecMode mode) {
    std::vector<PdrRun> runs;
    std::vector<ScenarioConfig> scenarios;
    for (double speed : cfg.speeds_mps) {
        auto add = [&](PolicyKind kind, double p_fixed) {
            for (int s = 0; s < cfg.n_seeds; ++s) {
                PdrRun run;
                run.policy = kind;
                run.p_fixed_w = p_fixed;
                run.speed_mps = speed;
                run.seed_index = s;
                run.sigma_db = cfg.deployment.channel.sigma_db;
                runs.push_back(run);

                ScenarioConfig sc = make_scenario(cfg);
                sc.mobility.mean_speed_mps = speed;
                sc.policy.kind = kind;
                sc.policy.fixed_power_w = p_fixed > 0.0 ? p_fixed : cfg.policy.fixed_power_w;
                // Seeds depend only on the seed index, so every policy and
                // speed at index s shares its trajectory/arrival draws.
                sc.seed = substream_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(s));
                scenarios.push_back(sc);
            }
        };
        for (double p : cfg.fixed_powers_w) add(PolicyKind::fixed_power, p);
        add(PolicyKind::optimal_control, 0.0);
    }
    const std::vector<SimMetrics> metrics = run_batch(scenarios, mode);
    for (size_t i = 0; i < runs.size(); ++i) runs[i].metrics = metrics[i];
    return runs;
}

std::vector<PdrAggregate> aggregate_pdr(const std::vector<PdrRun>& runs) {
    std::vector<PdrAggregate> aggs;
    for (const PdrRun& run : runs) {
        auto it = std::find_if(aggs.begin(), aggs.end(), [&](const PdrAggregate& a) {
            return a.policy == run.policy && a.p_fixed_w == run.p_fixed_w &&
                   a.speed_mps == run.speed_mps;
        });
        if (it == aggs.end()) {
            aggs.push_back({run.policy, run.p_fixed_w, run.speed_mps, 0, 0.0, 0.0, 0.0});
            it = aggs.end() - 1;
        }
        ++it->n_seeds;
        it->mean_pdr += run.metrics.pdr;
        it->se_pdr += run.metrics.pdr * run.metrics.pdr;
        it->mean_r_ct_m += run.metrics.mean_r_ct_m;
    }
    for (PdrAggregate& a : aggs) {
        const double n = a.n_seeds;
        a.mean_pdr /= n;
        a.mean_r_ct_m /= n;
        const double var = a.n_seeds > 1
                               ? std::max(0.0, (a.se_pdr - n * a.mean_pdr * a.mean_pdr) / (n - 1.0))
                               : 0.0;
        a.se_pdr = std::sqrt(var / n);
    }
    return aggs;
}

void apply_pdr_shadow_presets(AppConfig& cfg) {
    cfg.deployment.channel.alpha_p = 3.0;
    cfg.deployment.channel.alpha_c = 4.0;
    cfg.deployment.channel.sigma_db = 6.0;
    cfg.shadowing_enabled = true;
    cfg.speeds_mps = {30.0};
}

void write_surface_csv(std::ostream& os, const AppConfig& cfg,
                       const std::vector<SurfaceCell>& cells) {
    write_comment_block(os, cfg, "surface");
    os << "r2_km,theta_pc_deg,p_opt_w,p_opt_clamped_w,feasibility\n";
    for (const SurfaceCell& c : cells) {
        os << fmt(c.r2_km) << ',' << fmt(c.theta_deg) << ',';
        if (c.status == OptimalPower::Status::infeasible_forbidden)
            os << ",";
        else
            os << fmt(c.p_unclamped_w) << ',' << fmt(c.p_clamped_w);
        os << ',' << status_name(c.status) << "\n";
    }
}

void write_slice_csv(std::ostream& os, const AppConfig& cfg,
                     const std::vector<SurfaceCell>& cells) {
    write_comment_block(os, cfg, "slice");
    os << "r2_km,theta_pc_deg,p_opt_w,p_opt_clamped_w,feasibility,r_max_m,d22_m,transmittable\n";
    for (const SurfaceCell& c : cells) {
        os << fmt(c.r2_km) << ',' << fmt(c.theta_deg) << ',';
        if (c.status == OptimalPower::Status::infeasible_forbidden)
            os << ",";
        else
            os << fmt(c.p_unclamped_w) << ',' << fmt(c.p_clamped_w);
        os << ',' << status_name(c.status) << ',' << fmt(c.r_max_m) << ',' << fmt(c.d22_m) << ','
           << (c.d22_m <= c.r_max_m ? "true" : "false") << "\n";
    }
}

void write_radius_sweep_csv(std::ostream& os, const AppConfig& cfg,
                            const std::vector<RadiusSweepRow>& rows) {
    write_comment_block(os, cfg, "radius-sweep");
    os << "r2_km,theta_pc_deg,p_ct_w,r_ct_m,at_popt\n";
    for (const RadiusSweepRow& r : rows) {
        os << fmt(r.r2_km) << ',' << fmt(r.theta_deg) << ',' << fmt(r.p_ct_w) << ','
           << fmt(r.r_ct_m) << ',' << (r.at_popt ? "true" : "false") << "\n";
    }
}

namespace {

void write_metrics_columns(std::ostream& os, const SimMetrics& m) {
    os << m.packets_sent << ',' << m.packets_delivered << ',' << fmt(m.pdr) << ','
       << m.pr_violations << ',' << fmt(m.silent_fraction) << ',' << fmt(m.mean_r_ct_m);
}

constexpr const char* kPdrHeader =
    "policy,p_fixed_w,speed_mps,seed,sigma_db,packets_sent,packets_delivered,pdr,"
    "pr_violations,silent_fraction,mean_r_ct_m\n";

} // namespace

void write_pdr_csv(std::ostream& os, const AppConfig& cfg, const std::string& subcommand,
                   const std::vector<PdrRun>& runs, const std::vector<PdrAggregate>& aggs) {
    write_comment_block(os, cfg, subcommand);
    os << kPdrHeader;
    for (const PdrRun& r : runs) {
        os << policy_name(r.policy) << ',';
        if (r.policy == PolicyKind::fixed_power) os << fmt(r.p_fixed_w);
        os << ',' << fmt(r.speed_mps) << ',' << r.seed_index << ',' << fmt(r.sigma_db) << ',';
        write_metrics_columns(os, r.metrics);
        os << "\n";
    }
    // Seed-aggregated rows reuse the header: seed column holds mean/se, the
    // pdr column carries the aggregate value.
    for (const PdrAggregate& a : aggs) {
        const double sigma = cfg.deployment.channel.sigma_db;
        os << policy_name(a.policy) << ',';
        if (a.policy == PolicyKind::fixed_power) os << fmt(a.p_fixed_w);
        os << ',' << fmt(a.speed_mps) << ",mean," << fmt(sigma) << ",,," << fmt(a.mean_pdr)
           << ",,," << fmt(a.mean_r_ct_m) << "\n";
        os << policy_name(a.policy) << ',';
        if (a.policy == PolicyKind::fixed_power) os << fmt(a.p_fixed_w);
        os << ',' << fmt(a.speed_mps) << ",se," << fmt(sigma) << ",,," << fmt(a.se_pdr)
           << ",,,\n";
    }
}

void write_run_csv(std::ostream& os, const AppConfig& cfg, const SimMetrics& metrics) {
    write_comment_block(os, cfg, "run");
    os << kPdrHeader;
    os << policy_name(cfg.policy.kind) << ',';
    if (cfg.policy.kind == PolicyKind::fixed_power) os << fmt(cfg.policy.fixed_power_w);
    os << ',' << fmt(cfg.mobility.mean_speed_mps) << ',' << cfg.seed << ','
       << fmt(cfg.deployment.channel.sigma_db) << ',';
    write_metrics_columns(os, metrics);
    os << "\n";
}

void write_trajectory_csv(std::ostream& os, const AppConfig& cfg) {
    write_comment_block(os, cfg, "trajectory");
    os << "t_s,x_m,y_m,r_m,phi_rad\n";
    const ScenarioConfig sc = make_scenario(cfg);
    const auto trajectory = scenario_trajectory(sc);
    for (std::int64_t k = 0;; ++k) {
        const double t = sc.update_period_s * static_cast<double>(k);
        if (t > sc.sim_time_s) break;
        const CartesianPoint c = cartesian_position_at(trajectory, t);
        const PolarPoint p = to_polar(c);
        os << fmt(t) << ',' << fmt(c.x) << ',' << fmt(c.y) << ',' << fmt(p.r) << ','
           << fmt(p.phi) << "\n";
    }
}

} // namespace crpower

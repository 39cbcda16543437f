#include "crpower/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace crpower {

namespace {

constexpr double deg_per_rad = 180.0 / std::numbers::pi;

std::string trim(const std::string& s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v.empty()) throw ConfigError("config key '" + key + "': empty value");
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size())
        throw ConfigError("config key '" + key + "': cannot parse number '" + v + "'");
    return x;
}

long long parse_int(const std::string& key, const std::string& value) {
    const double x = parse_double(key, value);
    if (x != std::floor(x))
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    return static_cast<long long>(x);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v.empty()) throw ConfigError("config key '" + key + "': empty value");
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size())
        throw ConfigError("config key '" + key + "': cannot parse unsigned integer '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(value);
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += fmt_double(v[i]);
    }
    return out;
}

struct KeyDef {
    const char* name;
    std::function<void(AppConfig&, const std::string&)> set;
    std::function<std::string(const AppConfig&)> get;
};

// One table drives both apply_override and resolved_entries, so the echoed
// configuration always round-trips.
const std::vector<KeyDef>& key_table() {
    auto dkey = [](const char* name, std::function<double&(AppConfig&)> ref,
                   double to_internal = 1.0) {
        return KeyDef{
            name,
            [=](AppConfig& c, const std::string& v) { ref(c) = parse_double(name, v) * to_internal; },
            [=](const AppConfig& c) { return fmt_double(ref(const_cast<AppConfig&>(c)) / to_internal); }};
    };
    static const std::vector<KeyDef> table = {
        dkey("p_bs_kw", [](AppConfig& c) -> double& { return c.deployment.p_bs_w; }, 1e3),
        dkey("p_min_w", [](AppConfig& c) -> double& { return c.deployment.p_min_w; }),
        dkey("p_max_w", [](AppConfig& c) -> double& { return c.deployment.p_max_w; }),
        {"tau_p_db",
         [](AppConfig& c, const std::string& v) {
             set_thresholds_db(c.deployment, parse_double("tau_p_db", v), c.deployment.tau_c_db);
         },
         [](const AppConfig& c) { return fmt_double(c.deployment.tau_p_db); }},
        {"tau_c_db",
         [](AppConfig& c, const std::string& v) {
             set_thresholds_db(c.deployment, c.deployment.tau_p_db, parse_double("tau_c_db", v));
         },
         [](const AppConfig& c) { return fmt_double(c.deployment.tau_c_db); }},
        {"pr_rx_r_km",
         [](AppConfig& c, const std::string& v) {
             c.deployment.pr_rx = PolarPoint(parse_double("pr_rx_r_km", v) * 1e3, c.deployment.pr_rx.phi);
         },
         [](const AppConfig& c) { return fmt_double(c.deployment.pr_rx.r / 1e3); }},
        {"pr_rx_phi_deg",
         [](AppConfig& c, const std::string& v) {
             c.deployment.pr_rx =
                 PolarPoint(c.deployment.pr_rx.r, parse_double("pr_rx_phi_deg", v) / deg_per_rad);
         },
         [](const AppConfig& c) { return fmt_double(c.deployment.pr_rx.phi * deg_per_rad); }},
        dkey("alpha_p", [](AppConfig& c) -> double& { return c.deployment.channel.alpha_p; }),
        dkey("alpha_c", [](AppConfig& c) -> double& { return c.deployment.channel.alpha_c; }),
        dkey("g_t", [](AppConfig& c) -> double& { return c.deployment.channel.g_t; }),
        dkey("g_r", [](AppConfig& c) -> double& { return c.deployment.channel.g_r; }),
        dkey("h_t_m", [](AppConfig& c) -> double& { return c.deployment.channel.h_t_m; }),
        dkey("h_r_m", [](AppConfig& c) -> double& { return c.deployment.channel.h_r_m; }),
        dkey("sigma_db", [](AppConfig& c) -> double& { return c.deployment.channel.sigma_db; }),
        dkey("d0_m", [](AppConfig& c) -> double& { return c.deployment.channel.d0_m; }),
        {"ctx_r_km",
         [](AppConfig& c, const std::string& v) {
             c.ctx_pos = PolarPoint(parse_double("ctx_r_km", v) * 1e3, c.ctx_pos.phi);
         },
         [](const AppConfig& c) { return fmt_double(c.ctx_pos.r / 1e3); }},
        {"ctx_phi_deg",
         [](AppConfig& c, const std::string& v) {
             c.ctx_pos = PolarPoint(c.ctx_pos.r, parse_double("ctx_phi_deg", v) / deg_per_rad);
         },
         [](const AppConfig& c) { return fmt_double(c.ctx_pos.phi * deg_per_rad); }},
        {"crx_start_r_km",
         [](AppConfig& c, const std::string& v) {
             c.mobility.start = PolarPoint(parse_double("crx_start_r_km", v) * 1e3, c.mobility.start.phi);
         },
         [](const AppConfig& c) { return fmt_double(c.mobility.start.r / 1e3); }},
        {"crx_start_phi_deg",
         [](AppConfig& c, const std::string& v) {
             c.mobility.start =
                 PolarPoint(c.mobility.start.r, parse_double("crx_start_phi_deg", v) / deg_per_rad);
         },
         [](const AppConfig& c) { return fmt_double(c.mobility.start.phi * deg_per_rad); }},
        dkey("mean_speed_mps", [](AppConfig& c) -> double& { return c.mobility.mean_speed_mps; }),
        dkey("epoch_max_s", [](AppConfig& c) -> double& { return c.mobility.epoch_max_s; }),
        dkey("pause_mean_s", [](AppConfig& c) -> double& { return c.mobility.pause_mean_s; }),
        dkey("speed_jitter", [](AppConfig& c) -> double& { return c.mobility.speed_jitter; }),
        dkey("arrival_rate_pps", [](AppConfig& c) -> double& { return c.traffic.arrival_rate_pps; }),
        dkey("mean_packet_bytes", [](AppConfig& c) -> double& { return c.traffic.mean_length_bytes; }),
        dkey("update_period_s", [](AppConfig& c) -> double& { return c.update_period_s; }),
        dkey("sim_time_s", [](AppConfig& c) -> double& { return c.sim_time_s; }),
        {"shadowing_enabled",
         [](AppConfig& c, const std::string& v) { c.shadowing_enabled = parse_bool("shadowing_enabled", v); },
         [](const AppConfig& c) { return std::string(c.shadowing_enabled ? "true" : "false"); }},
        {"seed", [](AppConfig& c, const std::string& v) { c.seed = parse_u64("seed", v); },
         [](const AppConfig& c) { return std::to_string(c.seed); }},
        dkey("planning_margin_db", [](AppConfig& c) -> double& { return c.planning_margin_db; }),
        {"policy",
         [](AppConfig& c, const std::string& v) {
             const std::string p = trim(v);
             if (p == "optimal")
                 c.policy.kind = PolicyKind::optimal_control;
             else if (p == "fixed")
                 c.policy.kind = PolicyKind::fixed_power;
             else
                 throw ConfigError("config key 'policy': expected optimal|fixed, got '" + p + "'");
         },
         [](const AppConfig& c) {
             return std::string(c.policy.kind == PolicyKind::optimal_control ? "optimal" : "fixed");
         }},
        dkey("fixed_power_w", [](AppConfig& c) -> double& { return c.policy.fixed_power_w; }),
        dkey("r2_min_km", [](AppConfig& c) -> double& { return c.r2_min_km; }),
        dkey("r2_max_km", [](AppConfig& c) -> double& { return c.r2_max_km; }),
        dkey("r2_step_km", [](AppConfig& c) -> double& { return c.r2_step_km; }),
        dkey("theta_min_deg", [](AppConfig& c) -> double& { return c.theta_min_deg; }),
        dkey("theta_max_deg", [](AppConfig& c) -> double& { return c.theta_max_deg; }),
        dkey("theta_step_deg", [](AppConfig& c) -> double& { return c.theta_step_deg; }),
        dkey("p_grid_min_w", [](AppConfig& c) -> double& { return c.p_grid_min_w; }),
        dkey("p_grid_max_w", [](AppConfig& c) -> double& { return c.p_grid_max_w; }),
        dkey("p_grid_step_w", [](AppConfig& c) -> double& { return c.p_grid_step_w; }),
        dkey("slice_theta_deg", [](AppConfig& c) -> double& { return c.slice_theta_deg; }),
        {"r2_list_km",
         [](AppConfig& c, const std::string& v) { c.r2_list_km = parse_list("r2_list_km", v); },
         [](const AppConfig& c) { return fmt_list(c.r2_list_km); }},
        {"speeds_mps",
         [](AppConfig& c, const std::string& v) { c.speeds_mps = parse_list("speeds_mps", v); },
         [](const AppConfig& c) { return fmt_list(c.speeds_mps); }},
        {"fixed_powers_w",
         [](AppConfig& c, const std::string& v) { c.fixed_powers_w = parse_list("fixed_powers_w", v); },
         [](const AppConfig& c) { return fmt_list(c.fixed_powers_w); }},
        {"n_seeds",
         [](AppConfig& c, const std::string& v) { c.n_seeds = static_cast<int>(parse_int("n_seeds", v)); },
         [](const AppConfig& c) { return std::to_string(c.n_seeds); }},
        {"trajectory_dump",
         [](AppConfig& c, const std::string& v) { c.trajectory_dump = trim(v); },
         [](const AppConfig& c) { return c.trajectory_dump; }},
        {"threads",
         [](AppConfig& c, const std::string& v) { c.threads = static_cast<int>(parse_int("threads", v)); },
         [](const AppConfig& c) { return std::to_string(c.threads); }},
    };
    return table;
}

} // namespace

void apply_override(AppConfig& cfg, const std::string& key, const std::string& value) {
    const std::string k = trim(key);
    for (const KeyDef& def : key_table()) {
        if (k == def.name) {
            def.set(cfg, value);
            return;
        }
    }
    throw ConfigError("unknown config key '" + k + "'");
}

void apply_config_text(AppConfig& cfg, const std::string& text, const std::string& origin) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        try {
            apply_override(cfg, line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

AppConfig load_config(const std::string& path) {
    AppConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        apply_config_text(cfg, buf.str(), path);
    }
    return cfg;
}

void validate_config(const AppConfig& cfg) {
    try {
        ScenarioConfig sc = make_scenario(cfg);
        validate(sc);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw ConfigError(std::string("config: ") + what + " must be > 0");
    };
    positive(cfg.r2_step_km, "r2_step_km");
    positive(cfg.theta_step_deg, "theta_step_deg");
    positive(cfg.p_grid_step_w, "p_grid_step_w");
    positive(cfg.p_grid_min_w, "p_grid_min_w");
    if (cfg.r2_min_km > cfg.r2_max_km || cfg.theta_min_deg > cfg.theta_max_deg ||
        cfg.p_grid_min_w > cfg.p_grid_max_w)
        throw ConfigError("config: grid min exceeds max");
    if (!(cfg.r2_min_km > 0.0)) throw ConfigError("config: r2_min_km must be > 0");
    if (cfg.n_seeds < 1) throw ConfigError("config: n_seeds must be >= 1");
    if (cfg.threads < 0) throw ConfigError("config: threads must be >= 0");
    for (double v : cfg.speeds_mps)
        if (!(v >= 0.0)) throw ConfigError("config: speeds must be >= 0");
    for (double v : cfg.fixed_powers_w) positive(v, "fixed power");
    for (double v : cfg.r2_list_km) positive(v, "r2 list entry");
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const AppConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(key_table().size());
    for (const KeyDef& def : key_table()) out.emplace_back(def.name, def.get(cfg));
    return out;
}

ScenarioConfig make_scenario(const AppConfig& cfg) {
    ScenarioConfig sc;
    sc.deployment = cfg.deployment;
    sc.ctx_pos = cfg.ctx_pos;
    sc.mobility = cfg.mobility;
    sc.traffic = cfg.traffic;
    sc.policy = cfg.policy;
    sc.update_period_s = cfg.update_period_s;
    sc.shadowing_enabled = cfg.shadowing_enabled;
    sc.sim_time_s = cfg.sim_time_s;
    sc.seed = cfg.seed;
    sc.planning_margin_db = cfg.planning_margin_db;
    return sc;
}

} // namespace crpower

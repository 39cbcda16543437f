#include "crpower/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path; // "" = <subcommand>.csv, "-" = stdout
    std::vector<std::string> overrides;
    std::string seed; // kept textual so absence is detectable
    bool serial = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key = value configuration file");
    cmd->add_option("--out", args.out_path, "output CSV path ('-' for stdout)");
    cmd->add_option("--set", args.overrides, "override a config key, e.g. --set sim_time_s=200");
    cmd->add_option("--seed", args.seed, "override the base seed");
    cmd->add_flag("--serial", args.serial, "use the serial reference path instead of OpenMP");
}

crpower::AppConfig build_config(const CommonArgs& args, bool shadow_presets) {
    crpower::AppConfig cfg = crpower::load_config(args.config_path);
    if (shadow_presets) crpower::apply_pdr_shadow_presets(cfg);
    for (const std::string& kv : args.overrides) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw crpower::ConfigError("--set expects key=value, got '" + kv + "'");
        crpower::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!args.seed.empty()) crpower::apply_override(cfg, "seed", args.seed);
    crpower::validate_config(cfg);
    crpower::set_thread_count(cfg.threads);
    return cfg;
}

void emit(const std::string& subcommand, const CommonArgs& args, const std::string& body) {
    const std::string path = args.out_path.empty() ? subcommand + ".csv" : args.out_path;
    if (path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << body;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
    std::cerr << "wrote " << path << "\n";
}

int run_subcommand(const std::string& name, const CommonArgs& args) {
    using namespace crpower;
    const ExecMode mode = args.serial ? ExecMode::serial : ExecMode::parallel;
    const AppConfig cfg = build_config(args, name == "pdr-shadow");
    std::ostringstream os;
    if (name == "surface") {
        write_surface_csv(os, cfg, evaluate_surface(cfg, mode));
    } else if (name == "slice") {
        write_slice_csv(os, cfg, evaluate_slice(cfg, mode));
    } else if (name == "radius-sweep") {
        write_radius_sweep_csv(os, cfg, evaluate_radius_sweep(cfg, mode));
    } else if (name == "pdr" || name == "pdr-shadow") {
        const auto runs = run_pdr_sweep(cfg, mode);
        write_pdr_csv(os, cfg, name, runs, aggregate_pdr(runs));
    } else { // run
        write_run_csv(os, cfg, run_scenario(make_scenario(cfg)));
        if (!cfg.trajectory_dump.empty()) {
            std::ofstream dump(cfg.trajectory_dump, std::ios::binary);
            if (!dump)
                throw std::runtime_error("cannot open trajectory dump '" + cfg.trajectory_dump + "'");
            write_trajectory_csv(dump, cfg);
            std::cerr << "wrote " << cfg.trajectory_dump << "\n";
        }
    }
    emit(name, args, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"concurrent-transmission power control and packet-delivery simulator"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {"surface", "slice", "radius-sweep",
                                            "pdr",     "pdr-shadow", "run"};
    const std::vector<std::string> descriptions = {
        "region-maximizing power over the (r2, theta_pc) grid",
        "fixed-angle slice of the power surface over r2",
        "concurrent-transmission radius vs transmit power",
        "packet delivery ratio sweep: fixed powers x speeds x seeds vs the controller",
        "PDR sweep under log-normal shadowing (alpha 3/4, sigma 6 dB, 30 m/s presets)",
        "a single scenario with the configured policy"};

    std::vector<CommonArgs> args(names.size());
    for (size_t i = 0; i < names.size(); ++i)
        add_common_options(app.add_subcommand(names[i], descriptions[i]), args[i]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad usage is a configuration error
    }

    try {
        for (size_t i = 0; i < names.size(); ++i)
            if (app.get_subcommand(names[i])->parsed()) return run_subcommand(names[i], args[i]);
        return 2;
    } catch (const crpower::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geosph/scenarios.hpp"
#include "geosph/selftest.hpp"
#include "geosph/snapshot.hpp"

namespace {

using namespace geosph;

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_buf{};
    localtime_r(&t, &tm_buf);
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm_buf);
    return buf;
}

std::string make_run_dir(const LoadedConfig& cfg, const std::string& override_dir) {
    std::string dir = override_dir.empty()
                          ? cfg.output_dir + "/" + timestamp() + "-" +
                                config_hash(cfg)
                          : override_dir;
    std::filesystem::create_directories(dir);
    return dir;
}

void echo_config(const LoadedConfig& cfg, const std::string& dir) {
    const std::string text = effective_config_text(cfg);
    std::ofstream log(dir + "/run.log");
    log << text;
    for (const std::string& d : cfg.defaults_applied)
        log << "# default applied: " << d << "\n";
    for (const std::string& w : cfg.warnings) log << "# warning: " << w << "\n";
    for (const std::string& w : cfg.warnings)
        std::cerr << "warning: " << w << "\n";
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const LoadedConfig cfg = load_config(config_path);
    const std::string dir = make_run_dir(cfg, out_dir);
    echo_config(cfg, dir);

    if (cfg.scenario.type == ScenarioSpec::Type::Collapse) {
        const CollapseResult res = run_collapse(cfg, dir);
        if (res.outcome.status != RunOutcome::Status::Completed) {
            std::cerr << "run failed: " << res.outcome.detail << "\n";
            return 2;
        }
        std::printf("completed %.3f s; runout %.3f m, shear bands %d\n",
                    res.outcome.t_reached, res.metrics.final_runout,
                    res.metrics.shear_band_count);
        return 0;
    }

    // slope: geostatic initialization, strength reduction, one run
    ParticleSystem sys =
        build_slope(cfg.scenario.slope, cfg.sim.dp, cfg.material, cfg.sim.h);
    Simulation sim(std::move(sys), cfg.material, cfg.sim);
    sim.open_logs(dir);
    if (cfg.scenario.geostatic) {
        const GeostaticReport rep = sim.geostatic_initialize();
        std::printf("geostatic: %s after %ld steps (ke/m = %.3g J/kg)\n",
                    rep.converged ? "converged" : "NOT converged", rep.steps,
                    rep.final_ke_per_mass);
    }
    Simulation run(sim.system(), strength_reduce(cfg.material, cfg.scenario.fs),
                   cfg.sim);
    run.open_logs(dir);
    long snap = 0;
    try {
        run.advance(cfg.sim.t_end, [&](Simulation& s) {
            char name[64];
            std::snprintf(name, sizeof(name), "/snap_%04ld", snap++);
            write_snapshot(s.system(), s.epoch(), dir + name, s.time());
        });
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return 2;
    }
    std::printf("completed %.3f s; max displacement %.4f m\n", run.time(),
                max_displacement(run.system()));
    return 0;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        const std::string tok = csv.substr(pos, comma - pos);
        if (tok == "off" || tok == "inf")
            out.push_back(k_update_disabled);
        else
            out.push_back(std::stod(tok));
        pos = comma + 1;
    }
    return out;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& values_csv, const std::string& out_dir) {
    const LoadedConfig cfg = load_config(config_path);
    const std::string dir = make_run_dir(cfg, out_dir);
    echo_config(cfg, dir);

    if (param == "gamma" || param == "k") {
        if (values_csv.empty()) {
            std::cerr << "sweep: --values required for parameter " << param
                      << "\n";
            return 1;
        }
        const std::vector<double> values = parse_values(values_csv);
        const SweepReport report =
            param == "gamma" ? run_gamma_sweep(cfg, values, dir)
                             : run_k_sweep(cfg, values, dir);
        for (const SweepEntry& e : report.entries)
            std::printf("%s = %-6s %s at t = %.3f s\n", param.c_str(),
                        e.label.c_str(),
                        e.outcome.status == RunOutcome::Status::Completed
                            ? "completed"
                            : "terminated",
                        e.outcome.t_reached);
        return 0;
    }
    if (param == "fs") {
        const SafetyFactorResult res = safety_factor_sweep(cfg, dir);
        for (const SweepEntry& e : res.report.entries)
            std::printf("fs = %-5s %-13s final displacement %.4f m\n",
                        e.label.c_str(), to_string(e.curve_class).c_str(),
                        e.final_displacement);
        if (res.failure_found)
            std::printf("safety factor: %.2f\n", res.fs_star);
        else
            std::printf("no failure found up to fs = %.2f\n",
                        cfg.scenario.fs_max);
        return 0;
    }
    std::cerr << "sweep: unknown parameter '" << param
              << "' (expected gamma, k or fs)\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D plane-strain SPH solver for geomaterials"};
    app.require_subcommand(1);

    std::string config_path, out_dir, param, values;
    std::uint64_t seed = 42;

    CLI::App* run = app.add_subcommand("run", "execute one simulation");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "run directory override");

    CLI::App* sweep = app.add_subcommand("sweep", "execute a scenario sweep");
    sweep->add_option("config", config_path, "config file")->required();
    sweep->add_option("--param", param, "gamma | k | fs")->required();
    sweep->add_option("--values", values, "comma-separated values ('off' allowed for k)");
    sweep->add_option("--out", out_dir, "run directory override");

    CLI::App* verify = app.add_subcommand("verify", "run built-in oracle suites");
    verify->add_option("--seed", seed, "seed for stochastic test inputs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir);
        if (sweep->parsed()) return cmd_sweep(config_path, param, values, out_dir);
        return geosph::run_verify(seed, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

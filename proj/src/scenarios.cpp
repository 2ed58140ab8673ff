#include "geosph/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "geosph/snapshot.hpp"

namespace geosph {

std::string to_string(CurveClass c) {
    switch (c) {
        case CurveClass::Stable: return "stable";
        case CurveClass::Unstable: return "unstable";
        default: return "indeterminate";
    }
}

CurveVerdict classify_curve(const DisplacementCurve& curve,
                            double slope_height) {
    const auto& s = curve.samples;
    const std::size_t n = s.size();
    const std::size_t start = static_cast<std::size_t>(std::ceil(0.4 * n));
    if (n < 3 || n - start < 50)
        throw std::invalid_argument(
            "classify_curve: needs at least 50 samples in the trailing window");

    std::vector<double> d2;
    d2.reserve(n - start);
    for (std::size_t k = std::max<std::size_t>(start, 1); k + 1 < n; ++k)
        d2.push_back(s[k + 1].max_u - 2.0 * s[k].max_u + s[k - 1].max_u);

    std::sort(d2.begin(), d2.end());
    const std::size_t drop = d2.size() / 10;
    double mean = 0.0, mean_abs = 0.0;
    std::size_t kept = 0;
    for (std::size_t k = drop; k + drop < d2.size(); ++k) {
        mean += d2[k];
        mean_abs += std::abs(d2[k]);
        ++kept;
    }
    mean /= kept;
    mean_abs /= kept;

    CurveVerdict v;
    v.trimmed_second_diff = mean;
    v.final_displacement = s.back().max_u;

    // "positive" means positive beyond the oscillation noise floor
    const double tol = 0.1 * mean_abs + 1e-12 * slope_height;
    const bool rate_increasing = mean > tol;
    if (!rate_increasing && v.final_displacement < 0.01 * slope_height)
        v.cls = CurveClass::Stable;
    else if (rate_increasing || v.final_displacement >= 0.05 * slope_height)
        v.cls = CurveClass::Unstable;
    else
        v.cls = CurveClass::Indeterminate;
    return v;
}

namespace {

int count_shear_bands(const ParticleSystem& sys, const KernelSpec& spec) {
    std::vector<double> strains;
    for (std::size_t i = 0; i < sys.size(); ++i)
        if (sys.kind[i] == ParticleKind::Interior)
            strains.push_back(sys.eps_p_acc[i]);
    if (strains.empty()) return 0;
    std::vector<double> sorted = strains;
    std::sort(sorted.begin(), sorted.end());
    const double threshold = sorted[static_cast<std::size_t>(0.8 * sorted.size())];
    if (threshold <= 0.0) return 0;

    std::vector<int> parent(sys.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto in_band = [&](std::size_t i) {
        return sys.kind[i] == ParticleKind::Interior &&
               sys.eps_p_acc[i] >= threshold;
    };

    const PairList pairs = build_pairs(sys.pos, spec);
    for (const Pair& p : pairs.pairs)
        if (in_band(p.i) && in_band(p.j)) parent[find(p.i)] = find(p.j);

    std::vector<int> sizes(sys.size(), 0);
    for (std::size_t i = 0; i < sys.size(); ++i)
        if (in_band(i)) ++sizes[find(static_cast<int>(i))];
    int bands = 0;
    for (int c : sizes)
        if (c >= 10) ++bands;
    return bands;
}

double final_runout(const ParticleSystem& sys) {
    double x_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sys.size(); ++i)
        if (sys.kind[i] == ParticleKind::Interior)
            x_max = std::max(x_max, sys.pos[i].x);
    return x_max;
}

ParticleSystem build_scenario(const LoadedConfig& cfg) {
    const double h = cfg.sim.h > 0.0 ? cfg.sim.h : 1.5 * cfg.sim.dp;
    if (cfg.scenario.type == ScenarioSpec::Type::Collapse)
        return build_block(cfg.scenario.block, cfg.sim.dp, cfg.material, h);
    return build_slope(cfg.scenario.slope, cfg.sim.dp, cfg.material, h);
}

} // namespace

CollapseResult run_collapse(const LoadedConfig& cfg,
                            const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    CollapseResult result;
    result.metrics.min_tension_spacing = std::numeric_limits<double>::infinity();

    Simulation sim(build_scenario(cfg), cfg.material, cfg.sim);
    sim.open_logs(out_dir);

    long snap_index = 0;
    auto emit = [&](Simulation& s) {
        result.metrics.min_tension_spacing =
            std::min(result.metrics.min_tension_spacing,
                     s.tension_pair_spacing());
        if (!cfg.sim.write_vtk && !cfg.sim.write_csv) return;
        char name[64];
        std::snprintf(name, sizeof(name), "/snap_%04ld", snap_index++);
        write_snapshot(s.system(), s.epoch(), out_dir + name, s.time());
    };

    emit(sim);
    try {
        sim.advance(cfg.sim.t_end, emit);
        result.outcome.status = RunOutcome::Status::Completed;
        result.outcome.t_reached = sim.time();
    } catch (const NegativeJacobianError& e) {
        result.outcome.status = RunOutcome::Status::NegativeJacobian;
        result.outcome.t_reached = e.time;
        result.outcome.detail = e.what();
    } catch (const SimulationAbort& e) {
        result.outcome.status = RunOutcome::Status::Aborted;
        result.outcome.t_reached = sim.time();
        result.outcome.detail = e.what();
    }

    result.metrics.final_runout = final_runout(sim.system());
    result.metrics.shear_band_count =
        count_shear_bands(sim.system(), sim.kernel());
    return result;
}

void write_sweep_csv(const SweepReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "parameter,value,status,t_reached,final_runout,"
           "min_tension_spacing,shear_bands,class,final_displacement\n";
    for (const SweepEntry& e : report.entries) {
        const char* status =
            e.outcome.status == RunOutcome::Status::Completed
                ? "completed"
                : (e.outcome.status == RunOutcome::Status::NegativeJacobian
                       ? "negative-jacobian"
                       : "aborted");
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.9g,%.9g,%.9g,%d,%s,%.9g\n",
                      report.parameter.c_str(), e.label.c_str(), status,
                      e.outcome.t_reached, e.metrics.final_runout,
                      e.metrics.min_tension_spacing,
                      e.metrics.shear_band_count,
                      to_string(e.curve_class).c_str(), e.final_displacement);
        out << buf;
    }
}

namespace {

std::string value_label(double v) {
    if (v == k_update_disabled) return "off";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

SweepReport run_collapse_sweep(const LoadedConfig& cfg,
                               const std::string& parameter,
                               const std::vector<double>& values,
                               const std::string& out_dir) {
    SweepReport report;
    report.parameter = parameter;
    for (double v : values) {
        LoadedConfig run_cfg = cfg;
        if (parameter == "gamma")
            run_cfg.sim.gamma = v;
        else
            run_cfg.sim.k_update = v;
        SweepEntry entry;
        entry.value = v;
        entry.label = value_label(v);
        const std::string dir = out_dir + "/" + parameter + "_" + entry.label;
        const CollapseResult res = run_collapse(run_cfg, dir);
        entry.outcome = res.outcome;
        entry.metrics = res.metrics;
        report.entries.push_back(std::move(entry));
    }
    write_sweep_csv(report, out_dir + "/sweep.csv");
    return report;
}

} // namespace

SweepReport run_gamma_sweep(const LoadedConfig& cfg,
                            const std::vector<double>& values,
                            const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    return run_collapse_sweep(cfg, "gamma", values, out_dir);
}

SweepReport run_k_sweep(const LoadedConfig& cfg,
                        const std::vector<double>& values,
                        const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    return run_collapse_sweep(cfg, "k", values, out_dir);
}

SafetyFactorResult safety_factor_sweep(const LoadedConfig& cfg,
                                       const std::string& out_dir) {
    if (cfg.scenario.type != ScenarioSpec::Type::Slope)
        throw std::invalid_argument("safety factor sweep needs a slope scenario");
    std::filesystem::create_directories(out_dir);

    SafetyFactorResult result;
    result.report.parameter = "fs";
    const double H = cfg.scenario.slope.crest_height;

    // one geostatic initialization with the unreduced constants
    Simulation init(build_scenario(cfg), cfg.material, cfg.sim);
    init.open_logs(out_dir + "/geostatic");
    result.geostatic = init.geostatic_initialize();
    write_snapshot(init.system(), init.epoch(), out_dir + "/geostatic/state",
                   0.0);
    const ParticleSystem base_state = init.system();

    const double fs_end = cfg.scenario.fs_max + 1e-9;
    for (double fs = cfg.scenario.fs_start; fs <= fs_end;
         fs += cfg.scenario.fs_step) {
        SweepEntry entry;
        entry.value = fs;
        entry.label = value_label(fs);

        Simulation sim(base_state, strength_reduce(cfg.material, fs), cfg.sim);
        const std::string dir = out_dir + "/fs_" + entry.label;
        std::filesystem::create_directories(dir);
        sim.open_logs(dir);

        DisplacementCurve curve;
        const long sample_steps = std::max<long>(
            1, std::lround(cfg.sim.t_end / (400.0 * cfg.sim.dt)));
        curve.samples.push_back({0.0, 0.0});

        entry.outcome.status = RunOutcome::Status::Completed;
        try {
            while (sim.time() < cfg.sim.t_end - 0.5 * cfg.sim.dt) {
                sim.step();
                if (sim.step_count() % sample_steps == 0) {
                    curve.samples.push_back(
                        {sim.time(), max_displacement(sim.system())});
                    // a clearly sliding mass settles the verdict early
                    if (curve.samples.size() > 120 &&
                        curve.samples.back().max_u >= 0.15 * H)
                        break;
                }
            }
            entry.outcome.t_reached = sim.time();
        } catch (const NegativeJacobianError& e) {
            entry.outcome.status = RunOutcome::Status::NegativeJacobian;
            entry.outcome.t_reached = e.time;
            entry.outcome.detail = e.what();
        } catch (const SimulationAbort& e) {
            entry.outcome.status = RunOutcome::Status::Aborted;
            entry.outcome.t_reached = sim.time();
            entry.outcome.detail = e.what();
        }

        {
            std::ofstream cf(dir + "/curve.csv");
            cf << "t,max_displacement\n";
            for (const auto& s : curve.samples) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.9g,%.9g\n", s.t, s.max_u);
                cf << buf;
            }
        }
        write_snapshot(sim.system(), sim.epoch(), dir + "/final", sim.time());

        CurveVerdict verdict;
        try {
            verdict = classify_curve(curve, H);
        } catch (const std::invalid_argument&) {
            verdict.cls = CurveClass::Indeterminate;
            verdict.final_displacement =
                curve.samples.empty() ? 0.0 : curve.samples.back().max_u;
        }
        if (entry.outcome.status == RunOutcome::Status::NegativeJacobian &&
            verdict.final_displacement >= 0.05 * H)
            verdict.cls = CurveClass::Unstable;

        entry.curve_class = verdict.cls;
        entry.final_displacement = verdict.final_displacement;
        result.curves.push_back(std::move(curve));
        result.report.entries.push_back(entry);

        if (verdict.cls == CurveClass::Unstable) {
            result.failure_found = true;
            result.fs_star = fs;
            break;
        }
    }

    write_sweep_csv(result.report, out_dir + "/sweep.csv");
    return result;
}

} // namespace geosph

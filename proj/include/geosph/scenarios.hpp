#pragma once

#include <string>
#include <vector>

#include "geosph/configio.hpp"
#include "geosph/integrator.hpp"

namespace geosph {

struct DisplacementSample {
    double t = 0.0;
    double max_u = 0.0;
};

/// Time history of the largest particle displacement, uniformly sampled.
struct DisplacementCurve {
    std::vector<DisplacementSample> samples;
};

enum class CurveClass { Stable, Unstable, Indeterminate };

std::string to_string(CurveClass c);

struct CurveVerdict {
    CurveClass cls = CurveClass::Indeterminate;
    double trimmed_second_diff = 0.0; ///< trimmed mean of second differences
    double final_displacement = 0.0;
};

/// Convex-plateau vs concave-growth classification over the trailing 60% of
/// the curve. Stable: non-increasing displacement rate and final
/// displacement < 0.01 x slope height. Unstable: increasing rate (trimmed
/// mean of second differences positive beyond the oscillation noise floor)
/// or final displacement >= 0.05 x slope height. Requires >= 50 samples in
/// the trailing window.
CurveVerdict classify_curve(const DisplacementCurve& curve,
                            double slope_height);

struct RunOutcome {
    enum class Status { Completed, NegativeJacobian, Aborted };
    Status status = Status::Completed;
    double t_reached = 0.0;
    std::string detail;
};

struct CollapseMetrics {
    double final_runout = 0.0;          ///< max interior x at the end, m
    double min_tension_spacing = 0.0;   ///< min pair distance / dp, tension zone
    int shear_band_count = 0;           ///< connected high-plastic-strain regions
};

struct CollapseResult {
    RunOutcome outcome;
    CollapseMetrics metrics;
};

/// One collapse simulation with snapshots at the output cadence; solver
/// fatalities are captured in the outcome instead of propagating.
CollapseResult run_collapse(const LoadedConfig& cfg, const std::string& out_dir);

struct SweepEntry {
    std::string label;
    double value = 0.0;
    RunOutcome outcome;
    CollapseMetrics metrics;
    CurveClass curve_class = CurveClass::Indeterminate;
    double final_displacement = 0.0;
};

struct SweepReport {
    std::string parameter;
    std::vector<SweepEntry> entries;
};

void write_sweep_csv(const SweepReport& report, const std::string& path);

/// Collapse sweeps over the artificial-pressure constant (CESPH) or the
/// configuration-update threshold (TLSPH; infinity = updates off).
SweepReport run_gamma_sweep(const LoadedConfig& cfg,
                            const std::vector<double>& values,
                            const std::string& out_dir);
SweepReport run_k_sweep(const LoadedConfig& cfg,
                        const std::vector<double>& values,
                        const std::string& out_dir);

struct SafetyFactorResult {
    bool failure_found = false;
    double fs_star = 0.0;
    SweepReport report;
    std::vector<DisplacementCurve> curves; ///< one per swept fs value
    GeostaticReport geostatic;
};

/// Strength-reduction protocol: one damped geostatic initialization with the
/// full-strength material, then per reduction factor the state is restored,
/// the reduced constants applied, and the run classified from its
/// displacement curve. Stops at the first unstable factor.
SafetyFactorResult safety_factor_sweep(const LoadedConfig& cfg,
                                       const std::string& out_dir);

} // namespace geosph

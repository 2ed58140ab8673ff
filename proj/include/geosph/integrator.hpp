#pragma once

#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geosph/cesph.hpp"
#include "geosph/config.hpp"
#include "geosph/errors.hpp"
#include "geosph/tlsph.hpp"

namespace geosph {

struct GeostaticReport {
    bool converged = false;
    long steps = 0;
    double final_ke_per_mass = 0.0;
};

/// Owns a particle system and advances it with a second-order
/// predictor-corrector cycle: half-step update of kinematics and stress with
/// the rates at t, full step with the rates re-evaluated at the midpoint.
/// The Cauchy stress is integrated from sigma(t) in both stages (elastic
/// prediction + Drucker-Prager return). For TLSPH the configuration-update
/// check runs after each completed step.
class Simulation {
public:
    Simulation(ParticleSystem sys, MaterialParams mat, SimulationConfig cfg);

    void step();

    /// Steps until sim time reaches t_target; invokes on_output (if given)
    /// every output interval and at the final step.
    void advance(double t_target,
                 const std::function<void(Simulation&)>& on_output = {});

    /// Damped settling under gravity until the kinetic energy per unit
    /// interior mass drops below the configured tolerance, then the restart
    /// protocol: positions restored to the datum, velocities and
    /// displacements zeroed, densities reset, stresses kept.
    GeostaticReport geostatic_initialize();

    const ParticleSystem& system() const { return sys_; }
    ParticleSystem& system_mutable() { return sys_; }
    const MaterialParams& material() const { return mat_; }
    const SimulationConfig& config() const { return cfg_; }
    const KernelSpec& kernel() const { return kernel_; }

    double time() const { return t_; }
    long step_count() const { return step_count_; }

    /// TLSPH only.
    const ReferenceConfiguration& reference() const;
    void force_configuration_update();
    long epoch() const;
    double last_dmax() const { return last_dmax_; }

    long tension_cutoff_count() const { return tension_cutoffs_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// Opens progress.csv (and diagnostics.csv for TLSPH) under dir.
    void open_logs(const std::string& dir);

    /// Current-position pair spacing minimum over pairs of interior
    /// particles that are both in tension (p < 0), normalized by dp;
    /// +infinity when no such pair exists.
    double tension_pair_spacing();

private:
    void eval_rhs_cesph(bool rebuild);
    void eval_rhs_tlsph();
    void mirror_boundary(bool mirror_density);
    void apply_damping();
    void update_stress(double dt, bool commit);
    void commit_guards();
    void write_progress_row();

    ParticleSystem sys_;
    MaterialParams mat_;
    SimulationConfig cfg_;
    KernelSpec kernel_;

    double t_ = 0.0;
    long step_count_ = 0;
    double last_dmax_ = 0.0;
    long tension_cutoffs_ = 0;

    // CESPH state
    PairList pairs_;
    NeighborWorkspace ws_;
    std::vector<double> drho_;

    // TLSPH state
    std::optional<ReferenceConfiguration> ref_;
    std::vector<Tensor2D> F_, F_dot_, P_;
    std::vector<double> J_;

    // shared scratch
    std::vector<Vec2> accel_;
    std::vector<Tensor2D> l_scratch_;
    std::vector<StrainRateState> rates_;
    std::vector<Vec2> pos_n_, vel_n_;
    std::vector<SymTensor2D> sigma_n_;
    std::vector<double> rho_n_;
    std::vector<std::uint32_t> mirror_src_;
    std::vector<double> mirror_d2_;

    std::vector<std::string> warnings_;
    std::ofstream progress_;
    std::ofstream diagnostics_;
};

} // namespace geosph

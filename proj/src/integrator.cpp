#include "geosph/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <stdexcept>

#include "geosph/util.hpp"

namespace geosph {

namespace {

constexpr std::uint32_t kNoSource = std::numeric_limits<std::uint32_t>::max();

} // namespace

Simulation::Simulation(ParticleSystem sys, MaterialParams mat,
                       SimulationConfig cfg)
    : sys_(std::move(sys)), mat_(mat), cfg_(cfg) {
    cfg_.finalize();
    kernel_ = make_kernel(cfg_.h);

    const std::size_t n = sys_.size();
    drho_.resize(n);
    accel_.resize(n);
    l_scratch_.resize(n);
    rates_.resize(n);
    mirror_src_.resize(n);
    mirror_d2_.resize(n);

    if (cfg_.method == Method::TLSPH) {
        ref_ = make_reference(sys_, kernel_, cfg_.gradient_correction);
        F_.resize(n);
        F_dot_.resize(n);
        P_.resize(n);
        J_.resize(n);
        if (ref_->correction.fallback_count > 0)
            warnings_.push_back(
                "gradient correction: " +
                std::to_string(ref_->correction.fallback_count) +
                " singular moment matrices replaced by identity");
    }

    const double cfl = mat_.sound_speed * cfg_.dt / cfg_.h;
    {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "CFL number c_s dt / h = %.4g", cfl);
        warnings_.emplace_back(buf);
    }
    if (cfl > 0.5)
        warnings_.push_back("CFL number exceeds 0.5; expect instability");
    if (cfg_.method == Method::TLSPH && cfg_.gamma > 0.0)
        warnings_.push_back(
            "artificial pressure (gamma) is ignored by the TLSPH method");
}

const ReferenceConfiguration& Simulation::reference() const {
    if (!ref_) throw std::logic_error("reference(): CESPH run has no reference");
    return *ref_;
}

long Simulation::epoch() const { return ref_ ? ref_->epoch : 0; }

void Simulation::mirror_boundary(bool mirror_density) {
    const PairList& list = cfg_.method == Method::TLSPH ? ref_->pairs : pairs_;
    std::fill(mirror_src_.begin(), mirror_src_.end(), kNoSource);
    std::fill(mirror_d2_.begin(), mirror_d2_.end(),
              std::numeric_limits<double>::infinity());
    for (const Pair& p : list.pairs) {
        const bool bi = sys_.kind[p.i] == ParticleKind::Boundary;
        const bool bj = sys_.kind[p.j] == ParticleKind::Boundary;
        if (bi == bj) continue;
        const std::uint32_t b = bi ? p.i : p.j;
        const std::uint32_t a = bi ? p.j : p.i;
        const double d2 = norm2(sys_.pos[p.i] - sys_.pos[p.j]);
        if (d2 < mirror_d2_[b]) {
            mirror_d2_[b] = d2;
            mirror_src_[b] = a;
        }
    }
    for (std::size_t i = 0; i < sys_.size(); ++i) {
        if (mirror_src_[i] == kNoSource) continue;
        sys_.sigma[i] = sys_.sigma[mirror_src_[i]];
        if (mirror_density) sys_.rho[i] = sys_.rho[mirror_src_[i]];
    }
}

void Simulation::apply_damping() {
    if (cfg_.damping != DampingMode::Viscous) return;
    const double c_d = cfg_.c_d > 0.0
                           ? cfg_.c_d
                           : 0.05 * mat_.sound_speed / cfg_.h;
    for (std::size_t i = 0; i < sys_.size(); ++i)
        accel_[i] -= c_d * sys_.vel[i];
}

void Simulation::eval_rhs_cesph(bool rebuild) {
    if (rebuild)
        build_pairs(sys_.pos, kernel_, pairs_, ws_);
    else
        refresh_pair_geometry(pairs_, sys_.pos, kernel_);
    mirror_boundary(true);
    continuity_rhs(sys_, pairs_, drho_);
    velocity_gradient(sys_, pairs_, l_scratch_, rates_);
    momentum_rhs(sys_, pairs_, mat_, cfg_, kernel_, accel_);
    apply_damping();
}

void Simulation::eval_rhs_tlsph() {
    deformation_gradient(sys_, *ref_, F_, J_);
    mirror_boundary(false);
    const std::vector<Tensor2D>& L = ref_->correction.L;
    for (std::size_t i = 0; i < sys_.size(); ++i)
        P_[i] = pk1_stress(sys_.sigma[i], F_[i], J_[i], cfg_.pk1_form) * L[i];
    deformation_gradient_rate(sys_, *ref_, F_, F_dot_, rates_);
    momentum_rhs_tl(sys_, *ref_, P_, F_, J_, mat_, cfg_, accel_);
    hourglass_force(sys_, *ref_, mat_, cfg_.alpha_hg, F_, accel_);
    apply_damping();
}

void Simulation::update_stress(double dt, bool commit) {
    for (std::size_t i = 0; i < sys_.size(); ++i) {
        if (sys_.kind[i] != ParticleKind::Interior) continue;
        const SymTensor2D trial =
            elastic_predict(sigma_n_[i], rates_[i], mat_, dt);
        const DpReturnResult res = dp_return(trial, mat_);
        sys_.sigma[i] = res.sigma;
        if (commit) {
            sys_.eps_p_acc[i] += res.d_eps_p;
            if (res.apex) ++tension_cutoffs_;
        }
    }
}

void Simulation::commit_guards() {
    double acc = 0.0;
    for (std::size_t i = 0; i < sys_.size(); ++i)
        acc += sys_.pos[i].x + sys_.pos[i].y + norm2(sys_.vel[i]) +
               sys_.sigma[i].xx + sys_.sigma[i].yy;
    if (!std::isfinite(acc))
        throw SimulationAbort("non-finite field state at step " +
                              std::to_string(step_count_) + ", t = " +
                              std::to_string(t_));
}

void Simulation::step() {
    try {
        const double dt = cfg_.dt;
        const bool tl = cfg_.method == Method::TLSPH;

        // stage 1: rates at t
        if (tl)
            eval_rhs_tlsph();
        else
            eval_rhs_cesph(true);

        pos_n_ = sys_.pos;
        vel_n_ = sys_.vel;
        sigma_n_ = sys_.sigma;
        rho_n_ = sys_.rho;

        for (std::size_t i = 0; i < sys_.size(); ++i) {
            if (sys_.kind[i] != ParticleKind::Interior) continue;
            sys_.pos[i] = pos_n_[i] + (0.5 * dt) * vel_n_[i];
            sys_.vel[i] = vel_n_[i] + (0.5 * dt) * accel_[i];
            if (!tl) sys_.rho[i] = rho_n_[i] + (0.5 * dt) * drho_[i];
        }
        update_stress(0.5 * dt, false);

        // stage 2: rates at the midpoint
        if (tl)
            eval_rhs_tlsph();
        else
            eval_rhs_cesph(false);

        for (std::size_t i = 0; i < sys_.size(); ++i) {
            if (sys_.kind[i] != ParticleKind::Interior) continue;
            sys_.pos[i] = pos_n_[i] + dt * sys_.vel[i]; // midpoint velocity
            sys_.vel[i] = vel_n_[i] + dt * accel_[i];
            if (!tl) sys_.rho[i] = rho_n_[i] + dt * drho_[i];
        }
        update_stress(dt, true); // integrates from sigma(t) held in sigma_n_

        commit_guards();
        t_ += dt;
        ++step_count_;

        if (tl) {
            sys_.F = F_;
            sys_.J = J_;
            const double d_max = max_distortion(sys_, *ref_);
            last_dmax_ = d_max;
            if (d_max >= cfg_.k_update) {
                deformation_gradient(sys_, *ref_, F_, J_);
                update_configuration(sys_, *ref_, kernel_,
                                     cfg_.gradient_correction, J_);
            }
            if (diagnostics_.is_open()) {
                char buf[160];
                std::snprintf(buf, sizeof(buf), "%ld,%.9g,%ld,%.9g,%ld\n",
                              step_count_, t_, ref_->epoch, last_dmax_,
                              tension_cutoffs_);
                diagnostics_ << buf;
            }
        }
    } catch (NegativeJacobianError& e) {
        e.time = t_;
        if (diagnostics_.is_open())
            diagnostics_ << "# negative Jacobian: " << e.what() << "\n";
        throw;
    }
}

void Simulation::advance(double t_target,
                         const std::function<void(Simulation&)>& on_output) {
    const long every =
        std::max<long>(1, std::lround(cfg_.output_interval / cfg_.dt));
    bool fresh = false;
    while (t_ < t_target - 0.5 * cfg_.dt) {
        step();
        fresh = true;
        if (step_count_ % every == 0) {
            write_progress_row();
            if (on_output) on_output(*this);
            fresh = false;
        }
    }
    if (fresh) {
        write_progress_row();
        if (on_output) on_output(*this);
    }
}

void Simulation::write_progress_row() {
    if (!progress_.is_open()) return;
    char buf[200];
    std::snprintf(buf, sizeof(buf), "%ld,%.9g,%.9g,%.9g,%.9g\n", step_count_,
                  t_, last_dmax_, max_displacement(sys_),
                  kinetic_energy(sys_));
    progress_ << buf;
}

void Simulation::open_logs(const std::string& dir) {
    std::filesystem::create_directories(dir);
    progress_.open(dir + "/progress.csv");
    progress_ << "step,t,d_max,max_displacement,kinetic_energy\n";
    for (const std::string& w : warnings_) progress_ << "# " << w << "\n";
    if (cfg_.method == Method::TLSPH && cfg_.write_diagnostics) {
        diagnostics_.open(dir + "/diagnostics.csv");
        diagnostics_ << "step,t,epoch,d_max,tension_cutoffs\n";
    }
}

void Simulation::force_configuration_update() {
    if (!ref_) throw std::logic_error("configuration update: TLSPH only");
    deformation_gradient(sys_, *ref_, F_, J_);
    update_configuration(sys_, *ref_, kernel_, cfg_.gradient_correction, J_);
}

GeostaticReport Simulation::geostatic_initialize() {
    GeostaticReport report;
    const double interior_mass = [&] {
        double m = 0.0;
        for (std::size_t i = 0; i < sys_.size(); ++i)
            if (sys_.kind[i] == ParticleKind::Interior) m += sys_.mass[i];
        return m;
    }();
    if (interior_mass <= 0.0)
        throw std::invalid_argument("geostatic: no interior particles");

    // quiescent shortcut: nothing drives motion without gravity
    if (cfg_.gravity == 0.0 &&
        kinetic_energy(sys_) / interior_mass < cfg_.geostatic_ke_tol) {
        report.converged = true;
        return report;
    }

    const DampingMode saved_mode = cfg_.damping;
    cfg_.damping = DampingMode::Viscous;

    int quiet_samples = 0;
    const long sample_every = 100;
    while (t_ < cfg_.geostatic_max_time) {
        step();
        if (step_count_ % sample_every != 0) continue;
        const double ke = kinetic_energy(sys_) / interior_mass;
        report.final_ke_per_mass = ke;
        quiet_samples = ke < cfg_.geostatic_ke_tol ? quiet_samples + 1 : 0;
        if (quiet_samples >= 3) {
            report.converged = true;
            break;
        }
    }
    report.steps = step_count_;
    cfg_.damping = saved_mode;

    // restart protocol: positions back to the datum, stresses kept
    sys_.pos = sys_.initial_pos;
    for (std::size_t i = 0; i < sys_.size(); ++i) {
        sys_.vel[i] = {0.0, 0.0};
        sys_.rho[i] = sys_.rho0[i];
        sys_.eps_p_acc[i] = 0.0;
        sys_.F[i] = Tensor2D::identity();
        sys_.J[i] = 1.0;
    }
    if (ref_) ref_ = make_reference(sys_, kernel_, cfg_.gradient_correction);
    t_ = 0.0;
    step_count_ = 0;
    last_dmax_ = 0.0;
    tension_cutoffs_ = 0;
    return report;
}

double Simulation::tension_pair_spacing() {
    PairList current;
    build_pairs(sys_.pos, kernel_, current, ws_);
    double best = std::numeric_limits<double>::infinity();
    for (const Pair& p : current.pairs) {
        if (sys_.kind[p.i] != ParticleKind::Interior ||
            sys_.kind[p.j] != ParticleKind::Interior)
            continue;
        if (sys_.sigma[p.i].trace() <= 0.0 || sys_.sigma[p.j].trace() <= 0.0)
            continue; // p = -tr/3: tension means tr > 0
        best = std::min(best, p.r);
    }
    return best / cfg_.dp;
}

} // namespace geosph

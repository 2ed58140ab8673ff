#include "geosph/tlsph.hpp"

#include <algorithm>
#include <cmath>

namespace geosph {

ReferenceConfiguration make_reference(const ParticleSystem& sys,
                                      const KernelSpec& spec, bool corrected) {
    ReferenceConfiguration ref;
    ref.X = sys.pos;
    ref.V0 = sys.V0;
    ref.rho0 = sys.rho0;
    NeighborWorkspace ws;
    build_pairs(ref.X, spec, ref.pairs, ws);
    ref.pairs.built_on = PairBasis::Reference;
    ref.correction = corrected ? compute_correction(ref.pairs, ref.V0, sys.size())
                               : identity_correction(sys.size());
    ref.epoch = 0;
    return ref;
}

namespace {

/// Accumulates -sum_j (a_i - a_j) (x) gradW(X_ij) V0_j for both pair sides
/// and applies the per-particle correction.
void reference_gradient_sum(std::span<const Vec2> field,
                            const ReferenceConfiguration& ref,
                            std::span<Tensor2D> out) {
    std::fill(out.begin(), out.end(), Tensor2D{});
    for (const Pair& p : ref.pairs.pairs) {
        const Vec2 d = field[p.i] - field[p.j];
        const Tensor2D op = outer(d, p.grad_w);
        // (-d) (x) (-g) = d (x) g: the same term serves the j side
        out[p.i] -= op * ref.V0[p.j];
        out[p.j] -= op * ref.V0[p.i];
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = out[i] * ref.correction.L[i];
}

} // namespace

void deformation_gradient(const ParticleSystem& sys,
                          const ReferenceConfiguration& ref,
                          std::span<Tensor2D> F, std::span<double> J) {
    reference_gradient_sum(sys.pos, ref, F);
    for (std::size_t i = 0; i < F.size(); ++i) {
        J[i] = F[i].det();
        if (J[i] <= 0.0)
            throw NegativeJacobianError(i, sys.pos[i], ref.epoch, J[i]);
    }
}

void deformation_gradient_rate(const ParticleSystem& sys,
                               const ReferenceConfiguration& ref,
                               std::span<const Tensor2D> F,
                               std::span<Tensor2D> F_dot,
                               std::span<StrainRateState> rates) {
    reference_gradient_sum(sys.vel, ref, F_dot);
    for (std::size_t i = 0; i < F_dot.size(); ++i) {
        const double det = F[i].det();
        if (std::abs(det) < 1e-12)
            throw NegativeJacobianError(i, sys.pos[i], ref.epoch, det);
        rates[i] = split_velocity_gradient(F_dot[i] * F[i].inverse());
    }
}

Tensor2D pk1_stress(const SymTensor2D& sigma, const Tensor2D& F, double J,
                    Pk1Form form) {
    const Tensor2D s = sigma.plane();
    const Tensor2D F_inv = F.inverse();
    if (form == Pk1Form::Left) return J * (F_inv * s);
    return J * (s * F_inv.transposed());
}

void momentum_rhs_tl(const ParticleSystem& sys,
                     const ReferenceConfiguration& ref,
                     std::span<const Tensor2D> P,
                     std::span<const Tensor2D> F, std::span<const double> J,
                     const MaterialParams& mat, const SimulationConfig& cfg,
                     std::span<Vec2> accel) {
    const Vec2 g = {0.0, -cfg.gravity};
    std::fill(accel.begin(), accel.end(), g);

    for (const Pair& p : ref.pairs.pairs) {
        const std::uint32_t i = p.i;
        const std::uint32_t j = p.j;
        const double inv_i = 1.0 / (ref.rho0[i] * ref.rho0[i]);
        const double inv_j = 1.0 / (ref.rho0[j] * ref.rho0[j]);

        Tensor2D bracket = P[i] * inv_i + P[j] * inv_j;

        // viscous pressure from the current configuration, pulled back with
        // the pair-averaged Jbar Fbar^-1 to stay symmetric in the pair
        const Vec2 x_ij = sys.pos[i] - sys.pos[j];
        const Vec2 v_ij = sys.vel[i] - sys.vel[j];
        const double vx = dot(v_ij, x_ij);
        if (vx <= 0.0) {
            const double rho_i = ref.rho0[i] / J[i];
            const double rho_j = ref.rho0[j] / J[j];
            const double mu = cfg.h * vx / (norm2(x_ij) + 0.01 * cfg.h * cfg.h);
            const double pi_ij =
                (-cfg.beta1 * mat.sound_speed * mu + cfg.beta2 * mu * mu) /
                (0.5 * (rho_i + rho_j));
            if (pi_ij != 0.0) {
                const Tensor2D F_bar = 0.5 * (F[i] + F[j]);
                const double J_bar = 0.5 * (J[i] + J[j]);
                bracket -= (J_bar * pi_ij) * F_bar.inverse();
            }
        }

        const Vec2 f = bracket * p.grad_w;
        accel[i] += sys.mass[j] * f;
        accel[j] -= sys.mass[i] * f;
    }
}

void hourglass_force(const ParticleSystem& sys,
                     const ReferenceConfiguration& ref,
                     const MaterialParams& mat, double alpha,
                     std::span<const Tensor2D> F, std::span<Vec2> accel) {
    if (alpha == 0.0) return;
    for (const Pair& p : ref.pairs.pairs) {
        const std::uint32_t i = p.i;
        const std::uint32_t j = p.j;
        const Vec2 x_ij = sys.pos[i] - sys.pos[j];
        const double x2 = norm2(x_ij);
        if (x2 == 0.0) continue;
        const Tensor2D F_bar = 0.5 * (F[i] + F[j]);
        const Vec2 e_ij = F_bar * p.r_vec - x_ij;
        const double X2 = p.r * p.r;
        const double coeff = 0.5 * alpha * mat.E * dot(e_ij, x_ij) /
                             (X2 * x2) * p.w * ref.V0[i] * ref.V0[j];
        // force on i along x_ij; equal and opposite on j
        const Vec2 f = coeff * x_ij;
        accel[i] += f * (1.0 / sys.mass[i]);
        accel[j] -= f * (1.0 / sys.mass[j]);
    }
}

double max_distortion(const ParticleSystem& sys,
                      const ReferenceConfiguration& ref) {
    double d_max = 0.0;
    for (const Pair& p : ref.pairs.pairs) {
        const double x_len = norm(sys.pos[p.i] - sys.pos[p.j]);
        if (p.r == 0.0) continue;
        const double d = std::abs((x_len - p.r) / p.r);
        d_max = std::max(d_max, d);
    }
    return d_max;
}

void update_configuration(ParticleSystem& sys, ReferenceConfiguration& ref,
                          const KernelSpec& spec, bool corrected,
                          std::span<const double> J) {
    ref.X = sys.pos;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        ref.V0[i] *= J[i];
        ref.rho0[i] = sys.mass[i] / ref.V0[i];
    }
    NeighborWorkspace ws;
    build_pairs(ref.X, spec, ref.pairs, ws);
    ref.pairs.built_on = PairBasis::Reference;
    ref.correction = corrected
                         ? compute_correction(ref.pairs, ref.V0, sys.size())
                         : identity_correction(sys.size());
    ++ref.epoch;
    std::fill(sys.F.begin(), sys.F.end(), Tensor2D::identity());
    std::fill(sys.J.begin(), sys.J.end(), 1.0);
}

bool check_and_update_configuration(ParticleSystem& sys,
                                    ReferenceConfiguration& ref,
                                    const KernelSpec& spec, bool corrected,
                                    double k_update,
                                    std::span<const double> J,
                                    double* d_max_out) {
    const double d_max = max_distortion(sys, ref);
    if (d_max_out) *d_max_out = d_max;
    if (d_max < k_update) return false;
    update_configuration(sys, ref, spec, corrected, J);
    return true;
}

} // namespace geosph

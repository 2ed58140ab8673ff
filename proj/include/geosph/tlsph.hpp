#pragma once

#include <span>

#include "geosph/config.hpp"
#include "geosph/constitutive.hpp"
#include "geosph/errors.hpp"
#include "geosph/neighbors.hpp"
#include "geosph/particles.hpp"

namespace geosph {

/// Frozen reference frame for the total-Lagrangian sums: positions, volumes
/// and densities of the current epoch, the pair list built on them (with
/// reference kernel values/gradients), and the gradient-correction matrices.
/// Immutable between configuration updates.
struct ReferenceConfiguration {
    std::vector<Vec2> X;
    std::vector<double> V0;
    std::vector<double> rho0;
    PairList pairs; ///< built on X, PairBasis::Reference
    CorrectionField correction;
    long epoch = 0;
};

ReferenceConfiguration make_reference(const ParticleSystem& sys,
                                      const KernelSpec& spec, bool corrected);

/// F_i = -sum_j (x_i - x_j) (x) L_i gradW(X_ij) V0_j, J_i = det F_i.
/// Throws NegativeJacobianError when any J_i <= 0.
void deformation_gradient(const ParticleSystem& sys,
                          const ReferenceConfiguration& ref,
                          std::span<Tensor2D> F, std::span<double> J);

/// Fdot_i = -sum_j (v_i - v_j) (x) L_i gradW(X_ij) V0_j; the velocity
/// gradient l = Fdot F^-1 is split into strain rate and spin. Throws when
/// F is numerically singular.
void deformation_gradient_rate(const ParticleSystem& sys,
                               const ReferenceConfiguration& ref,
                               std::span<const Tensor2D> F,
                               std::span<Tensor2D> F_dot,
                               std::span<StrainRateState> rates);

/// First Piola-Kirchhoff stress from the Cauchy stress (see Pk1Form).
Tensor2D pk1_stress(const SymTensor2D& sigma, const Tensor2D& F, double J,
                    Pk1Form form);

/// dv_i/dt = sum_j m_j (P~_i/rho0_i^2 + P~_j/rho0_j^2 - Pi_ij) gradW(X_ij) + g.
/// P~ carries the gradient correction (P~ = P L) so pair forces stay exactly
/// antisymmetric; Pi_ij pulls the current-configuration viscous pressure
/// back with the pair-averaged Jbar Fbar^-1.
void momentum_rhs_tl(const ParticleSystem& sys,
                     const ReferenceConfiguration& ref,
                     std::span<const Tensor2D> P,
                     std::span<const Tensor2D> F, std::span<const double> J,
                     const MaterialParams& mat, const SimulationConfig& cfg,
                     std::span<Vec2> accel);

/// Stiffness hourglass control: penalizes the deviation
/// e_ij = (F_i + F_j)/2 X_ij - x_ij of each pair from the locally affine
/// deformation, as acceleration added on top of the momentum equation.
void hourglass_force(const ParticleSystem& sys,
                     const ReferenceConfiguration& ref,
                     const MaterialParams& mat, double alpha,
                     std::span<const Tensor2D> F, std::span<Vec2> accel);

/// d^max = max over pairs of |(|x_ij| - |X_ij|) / |X_ij||.
double max_distortion(const ParticleSystem& sys,
                      const ReferenceConfiguration& ref);

/// Rebases the reference on the current positions: X <- x, V0 <- J V0 (and
/// rho0 <- m/V0 so mass is exact), pair list and corrections rebuilt, epoch
/// incremented. Stress, velocity and accumulated plastic strain are not
/// touched.
void update_configuration(ParticleSystem& sys, ReferenceConfiguration& ref,
                          const KernelSpec& spec, bool corrected,
                          std::span<const double> J);

/// Applies update_configuration when max_distortion >= k_update. Returns
/// true when an update fired.
bool check_and_update_configuration(ParticleSystem& sys,
                                    ReferenceConfiguration& ref,
                                    const KernelSpec& spec, bool corrected,
                                    double k_update,
                                    std::span<const double> J,
                                    double* d_max_out = nullptr);

} // namespace geosph

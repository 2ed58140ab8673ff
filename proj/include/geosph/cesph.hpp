#pragma once

#include <span>

#include "geosph/config.hpp"
#include "geosph/constitutive.hpp"
#include "geosph/neighbors.hpp"
#include "geosph/particles.hpp"

namespace geosph {

/// drho_i/dt = sum_j m_j (v_i - v_j) . gradW_ij  on current-position pairs.
void continuity_rhs(const ParticleSystem& sys, const PairList& pairs,
                    std::span<double> drho);

/// Monaghan-type pairwise viscous pressure; active only for approaching
/// pairs (v_ij . x_ij <= 0) and symmetric in the pair.
double artificial_viscosity(const Vec2& v_ij, const Vec2& x_ij, double c_bar,
                            double rho_bar, double h, double beta1,
                            double beta2);

/// Repulsive pairwise term suppressing tensile instability. p_i^a = -p_i
/// when p_i < 0 (tension), zero otherwise; exponent n = W(0)/W(dp).
double artificial_pressure(double p_i, double p_j, double rho_i, double rho_j,
                           double w_ij, const KernelSpec& spec, double gamma,
                           double dp);

/// dv_i/dt = sum_j m_j (sigma_i/rho_i^2 + sigma_j/rho_j^2 - pi_ij I
///                      - p^a_ij I) . gradW_ij + g
void momentum_rhs(const ParticleSystem& sys, const PairList& pairs,
                  const MaterialParams& mat, const SimulationConfig& cfg,
                  const KernelSpec& spec, std::span<Vec2> accel);

/// l_i = -sum_j (v_i - v_j) (x) gradW_ij m_j/rho_j, split into strain rate
/// and spin.
void velocity_gradient(const ParticleSystem& sys, const PairList& pairs,
                       std::span<Tensor2D> l_scratch,
                       std::span<StrainRateState> rates);
void velocity_gradient(const ParticleSystem& sys, const PairList& pairs,
                       std::span<StrainRateState> rates);

} // namespace geosph

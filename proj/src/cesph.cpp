#include "geosph/cesph.hpp"

#include <algorithm>
#include <cmath>

namespace geosph {

void continuity_rhs(const ParticleSystem& sys, const PairList& pairs,
                    std::span<double> drho) {
    std::fill(drho.begin(), drho.end(), 0.0);
    for (const Pair& p : pairs.pairs) {
        const Vec2 v_ij = sys.vel[p.i] - sys.vel[p.j];
        const double div = dot(v_ij, p.grad_w);
        drho[p.i] += sys.mass[p.j] * div;
        drho[p.j] += sys.mass[p.i] * div;
    }
}

double artificial_viscosity(const Vec2& v_ij, const Vec2& x_ij, double c_bar,
                            double rho_bar, double h, double beta1,
                            double beta2) {
    const double vx = dot(v_ij, x_ij);
    if (vx > 0.0) return 0.0;
    const double mu = h * vx / (norm2(x_ij) + 0.01 * h * h);
    return (-beta1 * c_bar * mu + beta2 * mu * mu) / rho_bar;
}

double artificial_pressure(double p_i, double p_j, double rho_i, double rho_j,
                           double w_ij, const KernelSpec& spec, double gamma,
                           double dp) {
    if (gamma == 0.0) return 0.0;
    const double pa_i = p_i < 0.0 ? -p_i : 0.0;
    const double pa_j = p_j < 0.0 ? -p_j : 0.0;
    if (pa_i == 0.0 && pa_j == 0.0) return 0.0;
    const double w_dp = kernel_value(dp, spec);
    const double n = kernel_value(0.0, spec) / w_dp;
    return gamma * (pa_i / (rho_i * rho_i) + pa_j / (rho_j * rho_j)) *
           std::pow(w_ij / w_dp, n);
}

void momentum_rhs(const ParticleSystem& sys, const PairList& pairs,
                  const MaterialParams& mat, const SimulationConfig& cfg,
                  const KernelSpec& spec, std::span<Vec2> accel) {
    const Vec2 g = {0.0, -cfg.gravity};
    std::fill(accel.begin(), accel.end(), g);

    const bool tension_control = cfg.gamma > 0.0;
    const double w_dp = kernel_value(cfg.dp, spec);
    const double n_exp = kernel_value(0.0, spec) / w_dp;

    for (const Pair& p : pairs.pairs) {
        const std::uint32_t i = p.i;
        const std::uint32_t j = p.j;
        const double rho_i = sys.rho[i];
        const double rho_j = sys.rho[j];
        const double inv_i = 1.0 / (rho_i * rho_i);
        const double inv_j = 1.0 / (rho_j * rho_j);

        Tensor2D bracket = sys.sigma[i].plane() * inv_i +
                           sys.sigma[j].plane() * inv_j;

        const Vec2 v_ij = sys.vel[i] - sys.vel[j];
        const double pi_ij =
            artificial_viscosity(v_ij, p.r_vec, mat.sound_speed,
                                 0.5 * (rho_i + rho_j), spec.h, cfg.beta1,
                                 cfg.beta2);
        double iso = pi_ij;

        if (tension_control) {
            const double p_i = -sys.sigma[i].trace() / 3.0;
            const double p_j = -sys.sigma[j].trace() / 3.0;
            if (p_i < 0.0 || p_j < 0.0) {
                const double pa_i = p_i < 0.0 ? -p_i : 0.0;
                const double pa_j = p_j < 0.0 ? -p_j : 0.0;
                iso += cfg.gamma * (pa_i * inv_i + pa_j * inv_j) *
                       std::pow(p.w / w_dp, n_exp);
            }
        }
        bracket.xx -= iso;
        bracket.yy -= iso;

        const Vec2 f = bracket * p.grad_w;
        accel[i] += sys.mass[j] * f;
        accel[j] -= sys.mass[i] * f;
    }
}

void velocity_gradient(const ParticleSystem& sys, const PairList& pairs,
                       std::span<Tensor2D> l_scratch,
                       std::span<StrainRateState> rates) {
    std::fill(l_scratch.begin(), l_scratch.end(), Tensor2D{});
    for (const Pair& p : pairs.pairs) {
        const Vec2 v_ij = sys.vel[p.i] - sys.vel[p.j];
        const Tensor2D op = outer(v_ij, p.grad_w);
        l_scratch[p.i] -= op * (sys.mass[p.j] / sys.rho[p.j]);
        l_scratch[p.j] -= op * (sys.mass[p.i] / sys.rho[p.i]);
    }
    for (std::size_t i = 0; i < sys.size(); ++i)
        rates[i] = split_velocity_gradient(l_scratch[i]);
}

void velocity_gradient(const ParticleSystem& sys, const PairList& pairs,
                       std::span<StrainRateState> rates) {
    std::vector<Tensor2D> l(sys.size());
    velocity_gradient(sys, pairs, std::span<Tensor2D>(l), rates);
}

} // namespace geosph

#include "geosph/constitutive.hpp"

#include <cmath>

namespace geosph {

SymTensor2D elastic_predict(const SymTensor2D& sigma,
                            const StrainRateState& rate,
                            const MaterialParams& mat, double dt) {
    const double tr = rate.eps_dot.trace();
    const double third = tr / 3.0;
    const SymTensor2D dev = {rate.eps_dot.xx - third, rate.eps_dot.yy - third,
                             rate.eps_dot.zz - third, rate.eps_dot.xy};

    // omega sigma - sigma omega for omega = [[0, w], [-w, 0]]; the zz row
    // is untouched by in-plane spin.
    const double w = rate.spin;
    SymTensor2D inc;
    inc.xx = 2.0 * w * sigma.xy + 2.0 * mat.G * dev.xx + mat.K * tr;
    inc.yy = -2.0 * w * sigma.xy + 2.0 * mat.G * dev.yy + mat.K * tr;
    inc.zz = 2.0 * mat.G * dev.zz + mat.K * tr;
    inc.xy = w * (sigma.yy - sigma.xx) + 2.0 * mat.G * dev.xy;
    return sigma + inc * dt;
}

DpReturnResult dp_return(const SymTensor2D& sigma_star,
                         const MaterialParams& mat) {
    DpReturnResult out;
    out.sigma = sigma_star;
    if (!mat.plastic) return out;

    const StressInvariants inv = invariants(sigma_star);
    const double sqrt_j2 = std::sqrt(inv.j2);
    const double f = sqrt_j2 - mat.k_phi * inv.p - mat.k_c;

    // tolerance keeps the mapping exactly idempotent on returned states
    const double tol = 1e-12 * mat.G;
    if (f <= tol) return out;

    const double d_lambda = f / (mat.G + mat.K * mat.k_phi * mat.k_psi);
    const double scale_num = sqrt_j2 - mat.G * d_lambda;

    double p_new;
    SymTensor2D s_new;
    if (scale_num < 0.0) {
        // trial state beyond the apex: tension cutoff
        out.apex = true;
        s_new = {};
        p_new = mat.k_phi > 0.0 ? -mat.k_c / mat.k_phi : inv.p;
        out.d_lambda = mat.k_phi > 0.0 && mat.k_psi > 0.0
                           ? (p_new - inv.p) / (mat.K * mat.k_psi)
                           : sqrt_j2 / mat.G;
    } else {
        out.d_lambda = d_lambda;
        const double scale = scale_num / sqrt_j2;
        s_new = scale * inv.deviator;
        p_new = inv.p + mat.K * mat.k_psi * d_lambda;
    }

    out.sigma = s_new - SymTensor2D::isotropic(p_new);

    // magnitude of d_lambda * dg/dsigma with dg/dsigma = s/(2 sqrt(J2)) + k_psi/3 I
    out.d_eps_p = out.d_lambda * std::sqrt(0.5 + mat.k_psi * mat.k_psi / 3.0);
    return out;
}

} // namespace geosph

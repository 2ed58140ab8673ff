#pragma once

#include "geosph/material.hpp"
#include "geosph/tensor.hpp"

namespace geosph {

/// Symmetric/antisymmetric split of the velocity gradient. In 2D the spin
/// tensor has a single independent component: spin = omega_xy, i.e.
/// omega = [[0, spin], [-spin, 0]].
struct StrainRateState {
    SymTensor2D eps_dot; ///< strain rate, 1/s (zz = 0 under plane strain)
    double spin = 0.0;   ///< 1/s
};

inline StrainRateState split_velocity_gradient(const Tensor2D& l) {
    StrainRateState rate;
    rate.eps_dot = {l.xx, l.yy, 0.0, 0.5 * (l.xy + l.yx)};
    rate.spin = 0.5 * (l.xy - l.yx);
    return rate;
}

/// Elastic trial stress with Jaumann rotation terms:
///   sigma* = sigma + (omega sigma - sigma omega + 2G de + K tr(eps_dot) I) dt
/// where de is the deviatoric strain rate. The rotation terms keep the
/// invariants of sigma unchanged under pure spin (to O(dt^2) in J2).
SymTensor2D elastic_predict(const SymTensor2D& sigma,
                            const StrainRateState& rate,
                            const MaterialParams& mat, double dt);

struct DpReturnResult {
    SymTensor2D sigma;     ///< stress returned to the yield surface
    double d_lambda = 0.0; ///< plastic multiplier increment, >= 0
    double d_eps_p = 0.0;  ///< plastic strain increment magnitude
    bool apex = false;     ///< tension cutoff applied
};

/// Radial return onto the Drucker-Prager surface
/// f = sqrt(J2) - k_phi p - k_c with non-associated flow (slope k_psi):
///   d_lambda = f(sigma*) / (G + K k_phi k_psi)
///   s <- (sqrt(J2*) - G d_lambda)/sqrt(J2*) s*,   p <- p* + K k_psi d_lambda.
/// Trial states beyond the apex (scaling factor would turn negative) are
/// projected to the apex: s = 0, p = -k_c/k_phi (p kept if k_phi = 0).
DpReturnResult dp_return(const SymTensor2D& sigma_star,
                         const MaterialParams& mat);

} // namespace geosph

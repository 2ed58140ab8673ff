#pragma once

namespace geosph {

/// Elastic constants plus the Drucker-Prager surface parameters derived
/// from cohesion, friction angle and dilatancy angle.
struct MaterialParams {
    double rho0 = 0.0;  ///< reference density, kg/m^3
    double E = 0.0;     ///< Young's modulus, Pa
    double nu = 0.0;    ///< Poisson ratio
    double G = 0.0;     ///< shear modulus, Pa
    double K = 0.0;     ///< bulk modulus, Pa
    double c = 0.0;     ///< cohesion, Pa
    double phi = 0.0;   ///< friction angle, rad
    double psi = 0.0;   ///< dilatancy angle, rad
    double k_phi = 0.0; ///< 3 tan(phi) / sqrt(9 + 12 tan^2 phi)
    double k_c = 0.0;   ///< 3 c / sqrt(9 + 12 tan^2 phi)
    double k_psi = 0.0; ///< 3 tan(psi) / sqrt(9 + 12 tan^2 psi)
    double sound_speed = 0.0; ///< sqrt(E / rho0), m/s
    bool plastic = true;      ///< yield surface active
};

/// Derives all dependent constants. Angles in radians.
/// Throws std::invalid_argument on nonphysical inputs (nu outside (-1, 0.5),
/// non-positive rho0/E, phi outside [0, pi/2), psi outside [0, phi]).
MaterialParams derive_material(double rho0, double E, double nu, double c,
                               double phi, double psi);

/// Strength reduction: cohesion and the friction/dilatancy angles are
/// divided by fs and the derived constants recomputed. Elastic moduli are
/// untouched. Requires fs >= 1.
MaterialParams strength_reduce(const MaterialParams& mat, double fs);

} // namespace geosph

#include "geosph/material.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace geosph {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

double dp_slope(double angle) {
    const double t = std::tan(angle);
    return 3.0 * t / std::sqrt(9.0 + 12.0 * t * t);
}

} // namespace

MaterialParams derive_material(double rho0, double E, double nu, double c,
                               double phi, double psi) {
    require(rho0 > 0.0, "material: rho0 must be positive");
    require(E > 0.0, "material: E must be positive");
    require(nu > -1.0 && nu < 0.5, "material: nu must lie in (-1, 0.5)");
    require(c >= 0.0, "material: cohesion must be non-negative");
    require(phi >= 0.0 && phi < 0.5 * std::numbers::pi,
            "material: friction angle must lie in [0, pi/2)");
    require(psi >= 0.0 && psi <= phi,
            "material: dilatancy angle must lie in [0, phi]");

    MaterialParams m;
    m.rho0 = rho0;
    m.E = E;
    m.nu = nu;
    m.G = E / (2.0 * (1.0 + nu));
    m.K = E / (3.0 * (1.0 - 2.0 * nu));
    m.c = c;
    m.phi = phi;
    m.psi = psi;
    const double tphi = std::tan(phi);
    m.k_phi = dp_slope(phi);
    m.k_c = 3.0 * c / std::sqrt(9.0 + 12.0 * tphi * tphi);
    m.k_psi = dp_slope(psi);
    m.sound_speed = std::sqrt(E / rho0);
    return m;
}

MaterialParams strength_reduce(const MaterialParams& mat, double fs) {
    require(fs >= 1.0, "strength_reduce: fs must be >= 1");
    MaterialParams out = derive_material(mat.rho0, mat.E, mat.nu, mat.c / fs,
                                         mat.phi / fs, mat.psi / fs);
    out.plastic = mat.plastic;
    return out;
}

} // namespace geosph

#pragma once

#include <limits>
#include <string>

namespace geosph {

enum class Method { CESPH, TLSPH };
enum class DampingMode { Off, Viscous };

/// First Piola-Kirchhoff conversion convention.
/// Left:  P = J F^-1 sigma.  Right: P = J sigma F^-T (transpose of Left for
/// symmetric sigma). Both coincide at F = I.
enum class Pk1Form { Left, Right };

constexpr double k_update_disabled = std::numeric_limits<double>::infinity();

struct SimulationConfig {
    Method method = Method::TLSPH;
    double dt = 0.0;    ///< s
    double t_end = 0.0; ///< s
    double dp = 0.0;    ///< particle spacing, m
    double h = 0.0;     ///< smoothing length, m (0 -> 1.5 dp)

    double beta1 = 2.5; ///< artificial viscosity, linear term
    double beta2 = 2.5; ///< artificial viscosity, quadratic term
    double gamma = 0.6; ///< artificial pressure strength (CESPH only)

    double alpha_hg = 50.0; ///< hourglass penalty (TLSPH only)
    double k_update = 2.0;  ///< distortion threshold; infinity disables updates
    bool gradient_correction = true; ///< reference-kernel gradient correction
    Pk1Form pk1_form = Pk1Form::Left;

    double gravity = 9.81; ///< magnitude, acts along -y
    DampingMode damping = DampingMode::Off;
    double c_d = 0.0; ///< viscous damping rate 1/s; 0 -> 0.05 sqrt(E/rho0)/h

    double output_interval = 0.05;  ///< s between snapshots/progress rows
    bool write_vtk = true;
    bool write_csv = true;
    bool write_diagnostics = true;

    double geostatic_ke_tol = 1e-6;   ///< J/kg, convergence threshold
    double geostatic_max_time = 2.0;  ///< s, cap on the damped settling run

    /// Fills derived defaults (h) and checks ranges; throws
    /// std::invalid_argument naming the offending key.
    void finalize();
};

std::string to_string(Method m);
std::string to_string(DampingMode m);
std::string to_string(Pk1Form f);

} // namespace geosph

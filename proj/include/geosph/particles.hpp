#pragma once

#include <cstdint>
#include <vector>

#include "geosph/material.hpp"
#include "geosph/tensor.hpp"

namespace geosph {

enum class ParticleKind : std::uint8_t { Interior = 0, Boundary = 1 };

/// Particle storage, struct-of-arrays. `initial_pos` is the displacement
/// datum: set when the lattice is built and again by the geostatic restore;
/// it is NOT touched by TLSPH reference-configuration updates.
struct ParticleSystem {
    std::vector<Vec2> pos;          ///< current position x
    std::vector<Vec2> vel;          ///< velocity (boundary particles stay 0)
    std::vector<Vec2> initial_pos;  ///< displacement datum
    std::vector<double> rho;        ///< current density
    std::vector<double> rho0;       ///< build-time density
    std::vector<double> mass;       ///< per unit depth, kg/m
    std::vector<double> V0;         ///< build-time volume per unit depth, m^2
    std::vector<SymTensor2D> sigma; ///< Cauchy stress
    std::vector<Tensor2D> F;        ///< deformation gradient (TLSPH)
    std::vector<double> J;          ///< det F
    std::vector<double> eps_p_acc;  ///< accumulated plastic strain
    std::vector<ParticleKind> kind;

    std::size_t size() const { return pos.size(); }

    void add_particle(const Vec2& x, double rho0_, double V0_, ParticleKind k);

    std::size_t interior_count() const;
    double total_mass() const;
};

double kinetic_energy(const ParticleSystem& sys);
Vec2 total_momentum(const ParticleSystem& sys);
/// Largest |x - initial_pos| over interior particles.
double max_displacement(const ParticleSystem& sys);

/// Rectangular soil column resting on a floor of fixed particles, optionally
/// backed by a wall on the left. The floor extends from the wall to
/// floor_length to leave room for runout.
struct BlockGeometry {
    double width = 0.0;
    double height = 0.0;
    bool floor = true;
    bool left_wall = true;
    double floor_length = -1.0; ///< <0: width + 3*height
};

/// Slope cross-section over a foundation layer. y = 0 is the top of the
/// fixed base; the toe sits at (toe_x, foundation_depth) and the face rises
/// at angle_deg to the crest, which continues to lateral_extent. Fixed
/// particles line the base and both vertical ends.
struct SlopeGeometry {
    double crest_height = 5.0;      ///< above toe level, m
    double angle_deg = 45.0;
    double foundation_depth = 3.0;  ///< m
    double lateral_extent = 20.0;   ///< m
    double toe_x = 7.0;             ///< m
};

/// Number of boundary layers needed so interior support never starves:
/// ceil(2h/dp) + 1.
int boundary_layers(double h, double dp);

ParticleSystem build_block(const BlockGeometry& geo, double dp,
                           const MaterialParams& mat, double h);
ParticleSystem build_slope(const SlopeGeometry& geo, double dp,
                           const MaterialParams& mat, double h);

} // namespace geosph

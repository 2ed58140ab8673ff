#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "geosph/tensor.hpp"

namespace geosph {

/// Raised when the reference-kernel deformation gradient of any particle
/// degenerates (det F <= 0 or numerically singular). This terminates the
/// run; the stepper annotates the simulated time before rethrowing.
struct NegativeJacobianError : std::runtime_error {
    std::size_t particle;
    Vec2 position;
    long epoch;
    double jacobian;
    double time = -1.0;

    NegativeJacobianError(std::size_t particle_, const Vec2& position_,
                          long epoch_, double jacobian_)
        : std::runtime_error("negative Jacobian at particle " +
                             std::to_string(particle_) + " (x = " +
                             std::to_string(position_.x) + ", " +
                             std::to_string(position_.y) + ", epoch " +
                             std::to_string(epoch_) + ", J = " +
                             std::to_string(jacobian_) + ")"),
          particle(particle_),
          position(position_),
          epoch(epoch_),
          jacobian(jacobian_) {}
};

/// Non-finite field values or other unrecoverable stepper states.
struct SimulationAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace geosph

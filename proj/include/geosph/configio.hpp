#pragma once

#include <string>
#include <vector>

#include "geosph/config.hpp"
#include "geosph/material.hpp"
#include "geosph/particles.hpp"

namespace geosph {

struct ScenarioSpec {
    enum class Type { Collapse, Slope };
    Type type = Type::Collapse;
    BlockGeometry block;
    SlopeGeometry slope;
    bool geostatic = false; ///< damped settling + restart before the run
    double fs = 1.0;        ///< strength reduction applied after the restart
    double fs_start = 1.0;  ///< sweep protocol
    double fs_step = 0.1;
    double fs_max = 3.0;
};

struct LoadedConfig {
    SimulationConfig sim;
    MaterialParams material;
    ScenarioSpec scenario;
    std::string output_dir = "out";
    /// Angle inputs as given (degrees), kept so the echo reparses bit-exactly.
    double friction_angle_deg = 0.0;
    double dilatancy_angle_deg = 0.0;
    std::vector<std::string> warnings;
    std::vector<std::string> defaults_applied;
};

/// Parses the sectioned key=value config format ([scenario], [material],
/// [numerics], [output]). Unknown keys, missing required keys and
/// out-of-range values raise std::invalid_argument naming the key path.
LoadedConfig parse_config_text(const std::string& text,
                               const std::string& source_name);
LoadedConfig load_config(const std::string& path);

/// Canonical echo with every effective value explicit; reparsing it yields
/// an identical echo.
std::string effective_config_text(const LoadedConfig& cfg);

/// Short hex digest of the effective config (run directory naming).
std::string config_hash(const LoadedConfig& cfg);

} // namespace geosph

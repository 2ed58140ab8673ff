#pragma once

#include <string>
#include <vector>

#include "geosph/particles.hpp"

namespace geosph {

/// Writes <base>.vtk (legacy ASCII polydata) and <base>.csv with identical
/// per-particle columns. Output is byte-stable for identical state.
void write_snapshot(const ParticleSystem& sys, long epoch,
                    const std::string& base, double t);

struct SnapshotTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const;
};

SnapshotTable read_snapshot_csv(const std::string& path);

} // namespace geosph

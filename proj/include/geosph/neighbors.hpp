#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geosph/kernel.hpp"
#include "geosph/tensor.hpp"

namespace geosph {

enum class PairBasis : std::uint8_t { Current, Reference };

/// One unordered interaction pair, i < j. r_vec = pos_i - pos_j evaluated on
/// the positions the list was built (or last refreshed) on, together with
/// the kernel value and the gradient with respect to particle i.
struct Pair {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    Vec2 r_vec;
    double r = 0.0;
    double w = 0.0;
    Vec2 grad_w;
};

struct PairList {
    std::vector<Pair> pairs;
    PairBasis built_on = PairBasis::Current;
    double cutoff = 0.0;
};

/// Reusable cell-grid scratch; keeps the per-step pair build allocation-free.
struct NeighborWorkspace {
    std::vector<std::int32_t> cell_head;
    std::vector<std::int32_t> next_in_cell;
    std::vector<std::int32_t> cell_of;
};

/// Exact fixed-radius search with cutoff 2h over a uniform grid of cell size
/// 2h spanning the bounding box of the positions. Each unordered pair with
/// |x_i - x_j| < 2h appears exactly once.
void build_pairs(std::span<const Vec2> positions, const KernelSpec& spec,
                 PairList& out, NeighborWorkspace& ws);

PairList build_pairs(std::span<const Vec2> positions, const KernelSpec& spec);

/// Recompute r_vec/r/W/gradW for the existing index set against new
/// positions of the same particle collection (neighbor-list reuse within a
/// step; pairs drifting past 2h get zero weight from the kernel itself).
void refresh_pair_geometry(PairList& list, std::span<const Vec2> positions,
                           const KernelSpec& spec);

/// Per-particle matrices restoring first-order completeness of
/// reference-kernel gradient sums: L_i = (-sum_j X_ij (x) gradW_ij V0_j)^-1,
/// identity when the moment matrix is singular (starved neighborhoods).
struct CorrectionField {
    std::vector<Tensor2D> L;
    std::size_t fallback_count = 0;
};

CorrectionField compute_correction(const PairList& ref_pairs,
                                   std::span<const double> V0,
                                   std::size_t particle_count);

/// Identity correction (used when gradient correction is switched off).
CorrectionField identity_correction(std::size_t particle_count);

} // namespace geosph

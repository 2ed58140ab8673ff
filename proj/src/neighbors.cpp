#include "geosph/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace geosph {

namespace {

constexpr std::size_t kMaxCells = 1u << 24;

} // namespace

void build_pairs(std::span<const Vec2> positions, const KernelSpec& spec,
                 PairList& out, NeighborWorkspace& ws) {
    const std::size_t n = positions.size();
    out.pairs.clear();
    out.built_on = PairBasis::Current;
    out.cutoff = spec.support_radius;
    if (n < 2) return;

    const double cell = spec.support_radius;
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -min_x, max_y = -min_y;
    for (const Vec2& p : positions) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    if (!std::isfinite(min_x) || !std::isfinite(min_y) ||
        !std::isfinite(max_x) || !std::isfinite(max_y))
        throw std::runtime_error("build_pairs: non-finite particle position");

    const int nx = static_cast<int>((max_x - min_x) / cell) + 1;
    const int ny = static_cast<int>((max_y - min_y) / cell) + 1;
    const std::size_t ncells = static_cast<std::size_t>(nx) * ny;
    if (ncells > kMaxCells)
        throw std::runtime_error(
            "build_pairs: particle cloud spread far beyond scenario bounds");

    ws.cell_head.assign(ncells, -1);
    ws.next_in_cell.resize(n);
    ws.cell_of.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        const int cx = static_cast<int>((positions[a].x - min_x) / cell);
        const int cy = static_cast<int>((positions[a].y - min_y) / cell);
        const int c = cy * nx + cx;
        ws.cell_of[a] = c;
        ws.next_in_cell[a] = ws.cell_head[c];
        ws.cell_head[c] = static_cast<std::int32_t>(a);
    }

    const double cutoff2 = cell * cell;
    // half stencil: same cell (larger index), E, NW, N, NE
    const int offsets[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};

    auto emit = [&](std::uint32_t a, std::uint32_t b) {
        Vec2 rv = positions[a] - positions[b];
        const double r2 = norm2(rv);
        if (r2 >= cutoff2) return;
        Pair p;
        p.i = std::min(a, b);
        p.j = std::max(a, b);
        p.r_vec = positions[p.i] - positions[p.j];
        p.r = std::sqrt(r2);
        p.w = kernel_value(p.r, spec);
        p.grad_w = kernel_gradient(p.r_vec, spec);
        out.pairs.push_back(p);
    };

    for (std::size_t a = 0; a < n; ++a) {
        const int c = ws.cell_of[a];
        const int cx = c % nx;
        const int cy = c / nx;
        for (std::int32_t b = ws.next_in_cell[a]; b >= 0; b = ws.next_in_cell[b])
            emit(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        for (const auto& off : offsets) {
            const int ox = cx + off[0];
            const int oy = cy + off[1];
            if (ox < 0 || ox >= nx || oy < 0 || oy >= ny) continue;
            for (std::int32_t b = ws.cell_head[oy * nx + ox]; b >= 0;
                 b = ws.next_in_cell[b])
                emit(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        }
    }
}

PairList build_pairs(std::span<const Vec2> positions, const KernelSpec& spec) {
    PairList list;
    NeighborWorkspace ws;
    build_pairs(positions, spec, list, ws);
    return list;
}

void refresh_pair_geometry(PairList& list, std::span<const Vec2> positions,
                           const KernelSpec& spec) {
    for (Pair& p : list.pairs) {
        p.r_vec = positions[p.i] - positions[p.j];
        p.r = norm(p.r_vec);
        p.w = kernel_value(p.r, spec);
        p.grad_w = kernel_gradient(p.r_vec, spec);
    }
}

CorrectionField compute_correction(const PairList& ref_pairs,
                                   std::span<const double> V0,
                                   std::size_t particle_count) {
    CorrectionField field;
    field.L.assign(particle_count, Tensor2D{});
    std::vector<Tensor2D>& m = field.L; // accumulate moments in place

    for (const Pair& p : ref_pairs.pairs) {
        // X_ij (x) gradW is symmetric (gradient parallel to X_ij), so the
        // same outer product serves both sides scaled by the partner volume.
        const Tensor2D op = outer(p.r_vec, p.grad_w);
        m[p.i] += op * V0[p.j];
        m[p.j] += op * V0[p.i];
    }

    for (std::size_t i = 0; i < particle_count; ++i) {
        const Tensor2D neg = -1.0 * m[i];
        const double d = neg.det();
        const double scale = frobenius_norm(neg);
        if (std::abs(d) > 1e-10 * std::max(scale * scale, 1e-30)) {
            field.L[i] = neg.inverse();
        } else {
            field.L[i] = Tensor2D::identity();
            ++field.fallback_count;
        }
    }
    return field;
}

CorrectionField identity_correction(std::size_t particle_count) {
    CorrectionField field;
    field.L.assign(particle_count, Tensor2D::identity());
    return field;
}

} // namespace geosph

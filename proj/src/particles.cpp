#include "geosph/particles.hpp"

#include <cmath>
#include <stdexcept>

namespace geosph {

namespace {

bool is_multiple(double len, double dp) {
    const double n = len / dp;
    return std::abs(n - std::round(n)) < 1e-9 * std::max(1.0, n);
}

int cells_along(double len, double dp) {
    return static_cast<int>(std::llround(len / dp));
}

} // namespace

void ParticleSystem::add_particle(const Vec2& x, double rho0_, double V0_,
                                  ParticleKind k) {
    pos.push_back(x);
    vel.push_back({0.0, 0.0});
    initial_pos.push_back(x);
    rho.push_back(rho0_);
    rho0.push_back(rho0_);
    mass.push_back(rho0_ * V0_);
    V0.push_back(V0_);
    sigma.push_back({});
    F.push_back(Tensor2D::identity());
    J.push_back(1.0);
    eps_p_acc.push_back(0.0);
    kind.push_back(k);
}

std::size_t ParticleSystem::interior_count() const {
    std::size_t n = 0;
    for (auto k : kind)
        if (k == ParticleKind::Interior) ++n;
    return n;
}

double ParticleSystem::total_mass() const {
    double m = 0.0;
    for (double mi : mass) m += mi;
    return m;
}

double kinetic_energy(const ParticleSystem& sys) {
    double ke = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i)
        ke += 0.5 * sys.mass[i] * norm2(sys.vel[i]);
    return ke;
}

Vec2 total_momentum(const ParticleSystem& sys) {
    Vec2 p;
    for (std::size_t i = 0; i < sys.size(); ++i)
        p += sys.mass[i] * sys.vel[i];
    return p;
}

double max_displacement(const ParticleSystem& sys) {
    double u = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (sys.kind[i] != ParticleKind::Interior) continue;
        u = std::max(u, norm(sys.pos[i] - sys.initial_pos[i]));
    }
    return u;
}

int boundary_layers(double h, double dp) {
    return static_cast<int>(std::ceil(2.0 * h / dp)) + 1;
}

ParticleSystem build_block(const BlockGeometry& geo, double dp,
                           const MaterialParams& mat, double h) {
    if (geo.width <= 0.0 || geo.height <= 0.0)
        throw std::invalid_argument("block: width and height must be positive");
    if (dp <= 0.0) throw std::invalid_argument("block: dp must be positive");
    if (!is_multiple(geo.width, dp) || !is_multiple(geo.height, dp))
        throw std::invalid_argument("block: width and height must be multiples of dp");

    const double v0 = dp * dp;
    const int nx = cells_along(geo.width, dp);
    const int ny = cells_along(geo.height, dp);
    const int nb = boundary_layers(h, dp);
    const double floor_len =
        geo.floor_length > 0.0 ? geo.floor_length : geo.width + 3.0 * geo.height;
    const int nfx = cells_along(std::ceil(floor_len / dp) * dp, dp);

    ParticleSystem sys;

    // soil lattice on cell centers, column corner at the origin
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            sys.add_particle({(i + 0.5) * dp, (j + 0.5) * dp}, mat.rho0, v0,
                             ParticleKind::Interior);

    if (geo.floor) {
        const int i0 = geo.left_wall ? -nb : 0;
        for (int j = -nb; j < 0; ++j)
            for (int i = i0; i < nfx; ++i)
                sys.add_particle({(i + 0.5) * dp, (j + 0.5) * dp}, mat.rho0, v0,
                                 ParticleKind::Boundary);
    }
    if (geo.left_wall) {
        for (int j = 0; j < ny; ++j)
            for (int i = -nb; i < 0; ++i)
                sys.add_particle({(i + 0.5) * dp, (j + 0.5) * dp}, mat.rho0, v0,
                                 ParticleKind::Boundary);
    }
    return sys;
}

ParticleSystem build_slope(const SlopeGeometry& geo, double dp,
                           const MaterialParams& mat, double h) {
    if (geo.angle_deg <= 0.0 || geo.angle_deg >= 90.0)
        throw std::invalid_argument("slope: angle must lie in (0, 90) degrees");
    if (geo.crest_height <= 0.0 || geo.foundation_depth < 0.0 ||
        geo.lateral_extent <= 0.0 || geo.toe_x < 0.0)
        throw std::invalid_argument("slope: degenerate geometry");
    const double tan_a = std::tan(geo.angle_deg * std::acos(-1.0) / 180.0);
    const double crest_x = geo.toe_x + geo.crest_height / tan_a;
    if (crest_x >= geo.lateral_extent)
        throw std::invalid_argument("slope: crest does not fit inside lateral extent");

    const double v0 = dp * dp;
    const int nb = boundary_layers(h, dp);
    const int nx = cells_along(std::ceil(geo.lateral_extent / dp) * dp, dp);
    const double top = geo.foundation_depth + geo.crest_height;
    const int ny = cells_along(std::ceil(top / dp) * dp, dp);

    auto surface = [&](double x) {
        if (x <= geo.toe_x) return geo.foundation_depth;
        return geo.foundation_depth +
               std::min(geo.crest_height, (x - geo.toe_x) * tan_a);
    };

    ParticleSystem sys;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double cx = (i + 0.5) * dp;
            const double cy = (j + 0.5) * dp;
            if (cx < geo.lateral_extent && cy < surface(cx))
                sys.add_particle({cx, cy}, mat.rho0, v0, ParticleKind::Interior);
        }
    }

    // fixed base under the whole extent, plus both vertical ends
    for (int j = -nb; j < 0; ++j)
        for (int i = -nb; i < nx + nb; ++i)
            sys.add_particle({(i + 0.5) * dp, (j + 0.5) * dp}, mat.rho0, v0,
                             ParticleKind::Boundary);
    const int ny_left = cells_along(std::ceil(geo.foundation_depth / dp) * dp, dp);
    for (int j = 0; j < ny_left; ++j)
        for (int i = -nb; i < 0; ++i)
            sys.add_particle({(i + 0.5) * dp, (j + 0.5) * dp}, mat.rho0, v0,
                             ParticleKind::Boundary);
    for (int j = 0; j < ny; ++j)
        for (int i = nx; i < nx + nb; ++i)
            sys.add_particle({(i + 0.5) * dp, (j + 0.5) * dp}, mat.rho0, v0,
                             ParticleKind::Boundary);
    return sys;
}

} // namespace geosph

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geosph/material.hpp"
#include "geosph/particles.hpp"

using namespace geosph;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// independent scalar evaluation of the surface constants
double oracle_k_phi(double phi) {
    const double t = std::tan(phi);
    return 3.0 * t / std::sqrt(9.0 + 12.0 * t * t);
}
double oracle_k_c(double c, double phi) {
    const double t = std::tan(phi);
    return 3.0 * c / std::sqrt(9.0 + 12.0 * t * t);
}

} // namespace

TEST_CASE("cohesionless frictionless limit") {
    const MaterialParams m = derive_material(1000.0, 1e6, 0.3, 0.0, 0.0, 0.0);
    CHECK(m.k_phi == 0.0);
    CHECK(m.k_c == 0.0);
    CHECK(m.k_psi == 0.0);
}

TEST_CASE("cohesive soil constants match the scalar oracle") {
    const MaterialParams m =
        derive_material(1850.0, 1.5e6, 0.3, 5e3, 25.0 * kDeg, 0.0);
    CHECK(m.k_phi == doctest::Approx(oracle_k_phi(25.0 * kDeg)).epsilon(1e-15));
    CHECK(m.k_c ==
          doctest::Approx(oracle_k_c(5e3, 25.0 * kDeg)).epsilon(1e-15));
    CHECK(m.G == doctest::Approx(1.5e6 / 2.6).epsilon(1e-15));
    CHECK(m.K == doctest::Approx(1.5e6 / 1.2).epsilon(1e-15));
    CHECK(m.sound_speed ==
          doctest::Approx(std::sqrt(1.5e6 / 1850.0)).epsilon(1e-15));
}

TEST_CASE("stiff slope material constants match the scalar oracle") {
    const MaterialParams m =
        derive_material(1850.0, 100e6, 0.3, 5e3, 30.0 * kDeg, 0.0);
    const double expected = 3.0 * std::tan(30.0 * kDeg) / std::sqrt(13.0);
    CHECK(m.k_phi == doctest::Approx(expected).epsilon(1e-14));
    CHECK(m.k_phi == doctest::Approx(oracle_k_phi(30.0 * kDeg)).epsilon(1e-15));
}

TEST_CASE("rejects nonphysical elastic constants") {
    CHECK_THROWS_AS(derive_material(1000, 1e6, 0.5, 0, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(derive_material(1000, 1e6, 0.62, 0, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(derive_material(1000, 1e6, -1.0, 0, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(derive_material(-5, 1e6, 0.3, 0, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(derive_material(1000, 0.0, 0.3, 0, 0, 0),
                    std::invalid_argument);
    // dilatancy above friction
    CHECK_THROWS_AS(derive_material(1000, 1e6, 0.3, 0, 0.1, 0.2),
                    std::invalid_argument);
}

TEST_CASE("derive_material scales exactly with E") {
    const MaterialParams a = derive_material(1850, 1.5e6, 0.3, 5e3, 0.4, 0.0);
    const MaterialParams b = derive_material(1850, 3.0e6, 0.3, 5e3, 0.4, 0.0);
    CHECK(b.G == 2.0 * a.G);
    CHECK(b.K == 2.0 * a.K);
}

TEST_CASE("strength reduction") {
    const MaterialParams m =
        derive_material(1850.0, 100e6, 0.3, 5e3, 30.0 * kDeg, 0.0);
    SUBCASE("fs = 1 leaves the material unchanged") {
        const MaterialParams r = strength_reduce(m, 1.0);
        CHECK(r.c == m.c);
        CHECK(r.phi == m.phi);
        CHECK(r.k_phi == m.k_phi);
        CHECK(r.k_c == m.k_c);
    }
    SUBCASE("fs = 2 halves the cohesion") {
        const MaterialParams r = strength_reduce(m, 2.0);
        CHECK(r.c == doctest::Approx(2.5e3).epsilon(1e-15));
    }
    SUBCASE("fs = 1.8 divides the angle before taking the tangent") {
        const MaterialParams r = strength_reduce(m, 1.8);
        const double phi_r = 30.0 * kDeg / 1.8;
        CHECK(phi_r == doctest::Approx(16.6666666666667 * kDeg).epsilon(1e-12));
        CHECK(r.k_phi == doctest::Approx(oracle_k_phi(phi_r)).epsilon(1e-14));
        CHECK(r.E == m.E); // elastic constants untouched
    }
    SUBCASE("k_c and k_phi are strictly decreasing in fs") {
        double prev_kc = m.k_c + 1.0, prev_kphi = m.k_phi + 1.0;
        for (double fs = 1.0; fs <= 3.01; fs += 0.1) {
            const MaterialParams r = strength_reduce(m, fs);
            CHECK(r.k_c < prev_kc);
            CHECK(r.k_phi < prev_kphi);
            prev_kc = r.k_c;
            prev_kphi = r.k_phi;
        }
    }
    SUBCASE("fs below one rejected") {
        CHECK_THROWS_AS(strength_reduce(m, 0.9), std::invalid_argument);
    }
}

TEST_CASE("block lattice counting") {
    const MaterialParams m = derive_material(1850, 1.5e6, 0.3, 5e3, 0.4, 0.0);
    SUBCASE("1x1 m at dp = 0.5 gives four interior particles") {
        BlockGeometry geo{1.0, 1.0, false, false, -1.0};
        const ParticleSystem sys = build_block(geo, 0.5, m, 0.75);
        CHECK(sys.size() == 4);
        CHECK(sys.interior_count() == 4);
        CHECK(sys.pos[0].x == doctest::Approx(0.25));
        CHECK(sys.pos[0].y == doctest::Approx(0.25));
    }
    SUBCASE("particle count equals (w/dp)(h/dp) on the finer lattice") {
        BlockGeometry geo{1.2, 2.1, false, false, -1.0};
        const double dp = 0.03;
        const ParticleSystem sys = build_block(geo, dp, m, 1.5 * dp);
        CHECK(sys.interior_count() ==
              std::llround(1.2 / dp) * std::llround(2.1 / dp));
    }
    SUBCASE("per-particle mass and volume") {
        BlockGeometry geo{1.0, 1.0, true, true, 3.0};
        const ParticleSystem sys = build_block(geo, 0.25, m, 0.375);
        for (std::size_t i = 0; i < sys.size(); ++i) {
            CHECK(sys.V0[i] == doctest::Approx(0.0625).epsilon(1e-15));
            CHECK(sys.mass[i] ==
                  doctest::Approx(m.rho0 * 0.0625).epsilon(1e-15));
        }
        CHECK(sys.interior_count() == 16);
        CHECK(sys.size() > 16); // floor and wall particles present
    }
    SUBCASE("total mass equals rho0 times total area") {
        BlockGeometry geo{2.0, 1.0, false, false, -1.0};
        const ParticleSystem sys = build_block(geo, 0.1, m, 0.15);
        CHECK(sys.total_mass() ==
              doctest::Approx(m.rho0 * 2.0).epsilon(1e-12));
    }
    SUBCASE("invalid dimensions rejected") {
        CHECK_THROWS_AS(build_block({-1.0, 1.0}, 0.5, m, 0.75),
                        std::invalid_argument);
        CHECK_THROWS_AS(build_block({0.0, 1.0}, 0.5, m, 0.75),
                        std::invalid_argument);
        CHECK_THROWS_AS(build_block({1.05, 1.0}, 0.5, m, 0.75),
                        std::invalid_argument);
    }
}

TEST_CASE("boundary layers cover the kernel support") {
    CHECK(boundary_layers(0.045, 0.03) == 4);
    CHECK(boundary_layers(0.15, 0.1) == 4);
}

TEST_CASE("slope lattice against the area-counting oracle") {
    const MaterialParams m =
        derive_material(1850, 100e6, 0.3, 5e3, 30.0 * kDeg, 0.0);
    SlopeGeometry geo; // 45 deg, H = 5, foundation 3, extent 20, toe at 7
    const double dp = 0.1;
    const ParticleSystem sys = build_slope(geo, dp, m, 1.5 * dp);

    // area = foundation + triangle under the face + crest block
    const double run = geo.crest_height / std::tan(geo.angle_deg * kDeg);
    const double area =
        geo.lateral_extent * geo.foundation_depth +
        0.5 * run * geo.crest_height +
        (geo.lateral_extent - geo.toe_x - run) * geo.crest_height;
    const double count_from_area = area / (dp * dp);
    const double perimeter = 2.0 * geo.lateral_extent +
                             2.0 * (geo.foundation_depth + geo.crest_height);
    CHECK(std::abs(static_cast<double>(sys.interior_count()) -
                   count_from_area) <= perimeter / dp);

    SUBCASE("boundary particles line base and both vertical ends") {
        double min_x = 0, max_x = 0, min_y = 0;
        for (std::size_t i = 0; i < sys.size(); ++i) {
            if (sys.kind[i] != ParticleKind::Boundary) continue;
            min_x = std::min(min_x, sys.pos[i].x);
            max_x = std::max(max_x, sys.pos[i].x);
            min_y = std::min(min_y, sys.pos[i].y);
        }
        CHECK(min_x < 0.0);
        CHECK(max_x > geo.lateral_extent);
        CHECK(min_y < 0.0);
    }
}

TEST_CASE("degenerate slope geometry rejected") {
    const MaterialParams m =
        derive_material(1850, 100e6, 0.3, 5e3, 30.0 * kDeg, 0.0);
    SlopeGeometry geo;
    geo.angle_deg = 90.1;
    CHECK_THROWS_AS(build_slope(geo, 0.1, m, 0.15), std::invalid_argument);
    geo.angle_deg = 0.0;
    CHECK_THROWS_AS(build_slope(geo, 0.1, m, 0.15), std::invalid_argument);
    geo.angle_deg = 45.0;
    geo.lateral_extent = 8.0; // crest would fall outside
    CHECK_THROWS_AS(build_slope(geo, 0.1, m, 0.15), std::invalid_argument);
}

TEST_CASE("slope at the tabulated spacing is accepted") {
    const MaterialParams m =
        derive_material(1850, 100e6, 0.3, 5e3, 30.0 * kDeg, 0.0);
    SlopeGeometry geo;
    const ParticleSystem sys = build_slope(geo, 0.1, m, 0.15);
    CHECK(sys.interior_count() > 10000);
}

#include "geosph/selftest.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "geosph/integrator.hpp"
#include "geosph/scenarios.hpp"

namespace geosph {

namespace {

bool check_kernel_quadrature(std::ostream& os) {
    const KernelSpec spec = make_kernel(0.045);
    const int n = 400;
    const double lo = -spec.support_radius, hi = spec.support_radius;
    const double cell = (hi - lo) / n;
    double sum = 0.0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double x = lo + (ix + 0.5) * cell;
            const double y = lo + (iy + 0.5) * cell;
            sum += kernel_value(std::sqrt(x * x + y * y), spec) * cell * cell;
        }
    const bool ok = std::abs(sum - 1.0) <= 1e-3;
    os << (ok ? "ok" : "FAIL") << "  kernel quadrature: integral = " << sum
       << "\n";
    return ok;
}

bool check_dp_residuals(std::uint64_t seed, std::ostream& os) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> normal_stress(-2e5, 1e5);
    std::uniform_real_distribution<double> shear_stress(-1e5, 1e5);
    const double deg = std::numbers::pi / 180.0;
    const MaterialParams mats[2] = {
        derive_material(1850.0, 1.5e6, 0.3, 5e3, 25.0 * deg, 0.0),
        derive_material(1850.0, 100e6, 0.3, 5e3, 30.0 * deg, 0.0)};

    double worst = 0.0;
    bool ok = true;
    for (const MaterialParams& mat : mats) {
        for (int k = 0; k < 1000; ++k) {
            const SymTensor2D trial = {normal_stress(rng), normal_stress(rng),
                                       normal_stress(rng), shear_stress(rng)};
            const DpReturnResult res = dp_return(trial, mat);
            if (res.d_lambda < 0.0) ok = false;
            const StressInvariants inv = invariants(res.sigma);
            const double f =
                std::sqrt(inv.j2) - mat.k_phi * inv.p - mat.k_c;
            const double tol =
                1e-8 * std::max(mat.k_c, mat.k_phi * std::abs(inv.p));
            if (f > tol) ok = false;
            worst = std::max(worst, f);
            const DpReturnResult twice = dp_return(res.sigma, mat);
            if (!(twice.sigma == res.sigma) || twice.d_lambda != 0.0) ok = false;
        }
    }
    os << (ok ? "ok" : "FAIL")
       << "  return mapping: worst residual = " << worst << " Pa\n";
    return ok;
}

bool check_affine_reproduction(std::uint64_t seed, std::ostream& os) {
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> entry(-0.3, 0.3);
    const double deg = std::numbers::pi / 180.0;
    const MaterialParams mat =
        derive_material(1850.0, 1.5e6, 0.3, 5e3, 25.0 * deg, 0.0);
    const double dp = 0.05;
    BlockGeometry geo{1.0, 1.0, false, false, -1.0};
    ParticleSystem sys = build_block(geo, dp, mat, 1.5 * dp);
    const KernelSpec spec = make_kernel(1.5 * dp);
    ReferenceConfiguration ref = make_reference(sys, spec, true);

    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        Tensor2D a{1.0 + entry(rng), entry(rng), entry(rng), 1.0 + entry(rng)};
        if (a.det() < 0.5) a = Tensor2D::identity();
        for (std::size_t i = 0; i < sys.size(); ++i)
            sys.pos[i] = a * ref.X[i] + Vec2{0.01, -0.02};
        std::vector<Tensor2D> F(sys.size());
        std::vector<double> J(sys.size());
        deformation_gradient(sys, ref, F, J);
        for (const Tensor2D& f : F)
            worst = std::max(worst, frobenius_norm(f - a));
    }
    const bool ok = worst <= 1e-10;
    os << (ok ? "ok" : "FAIL")
       << "  affine deformation gradient: worst |F - A| = " << worst << "\n";
    return ok;
}

bool check_momentum_conservation(std::uint64_t seed, std::ostream& os) {
    bool ok = true;
    for (const Method method : {Method::CESPH, Method::TLSPH}) {
        std::mt19937_64 rng(seed + 2);
        std::uniform_real_distribution<double> v0(-0.01, 0.01);
        const double deg = std::numbers::pi / 180.0;
        const MaterialParams mat =
            derive_material(1850.0, 1.5e6, 0.3, 5e3, 25.0 * deg, 0.0);
        const double dp = 0.05;
        BlockGeometry geo{0.5, 0.5, false, false, -1.0};
        ParticleSystem sys = build_block(geo, dp, mat, 1.5 * dp);
        for (std::size_t i = 0; i < sys.size(); ++i)
            sys.vel[i] = {v0(rng), v0(rng)};

        SimulationConfig cfg;
        cfg.method = method;
        cfg.dp = dp;
        cfg.dt = 2e-4;
        cfg.t_end = 1.0;
        cfg.gravity = 0.0;
        Simulation sim(sys, mat, cfg);
        const Vec2 p0 = total_momentum(sim.system());
        for (int s = 0; s < 200; ++s) sim.step();
        const Vec2 p1 = total_momentum(sim.system());
        const double drift = norm(p1 - p0);
        const double limit =
            1e-8 * norm(p0) + mat.rho0 * dp * dp * 1e-12;
        if (drift > limit) ok = false;
        os << (drift <= limit ? "ok" : "FAIL") << "  momentum conservation ("
           << to_string(method) << "): drift = " << drift << " kg m/s per m\n";
    }
    return ok;
}

} // namespace

int run_verify(std::uint64_t seed, std::ostream& os) {
    bool ok = true;
    ok &= check_kernel_quadrature(os);
    ok &= check_dp_residuals(seed, os);
    ok &= check_affine_reproduction(seed, os);
    ok &= check_momentum_conservation(seed, os);
    os << (ok ? "verify: all suites passed\n" : "verify: FAILURES above\n");
    return ok ? 0 : 1;
}

} // namespace geosph

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geosph/kernel.hpp"
#include "geosph/tensor.hpp"

using namespace geosph;

namespace {

// independent finite-difference oracle for the radial kernel derivative
double fd_kernel_deriv(double r, const KernelSpec& spec) {
    const double step = 1e-6 * spec.h;
    return (kernel_value(r + step, spec) - kernel_value(r - step, spec)) /
           (2.0 * step);
}

} // namespace

TEST_CASE("kernel value at the origin and support boundary") {
    const KernelSpec unit = make_kernel(1.0);
    // alpha_d evaluated independently from the closed form
    const double alpha = 7.0 / (32.0 * std::numbers::pi);
    CHECK(unit.alpha_d == doctest::Approx(alpha).epsilon(1e-15));
    CHECK(kernel_value(0.0, unit) ==
          doctest::Approx(8.0 * alpha).epsilon(1e-15));
    CHECK(kernel_value(0.0, unit) ==
          doctest::Approx(7.0 / (4.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(kernel_value(2.0, unit) == 0.0);
    CHECK(kernel_value(5.0, unit) == 0.0);

    const KernelSpec soil = make_kernel(0.045);
    const double alpha_soil = 7.0 / (32.0 * std::numbers::pi * 0.045 * 0.045);
    CHECK(kernel_value(0.045, soil) ==
          doctest::Approx(alpha_soil * 1.5).epsilon(1e-14));
}

TEST_CASE("kernel is non-negative and non-increasing in r") {
    const KernelSpec spec = make_kernel(0.7);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(0.0, 2.2 * spec.h);
    double prev_r = 0.0, prev_w = kernel_value(0.0, spec);
    for (int k = 0; k < 500; ++k) {
        const double r = radius(rng);
        const double w = kernel_value(r, spec);
        CHECK(w >= 0.0);
        if (r > prev_r)
            CHECK(w <= prev_w + 1e-15);
        prev_r = r;
        prev_w = w;
    }
}

TEST_CASE("kernel integrates to one over its support") {
    for (const double h : {1.0, 0.045}) {
        const KernelSpec spec = make_kernel(h);
        const int n = 400;
        const double lo = -2.0 * h;
        const double cell = 4.0 * h / n;
        double sum = 0.0;
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const double x = lo + (ix + 0.5) * cell;
                const double y = lo + (iy + 0.5) * cell;
                sum += kernel_value(std::hypot(x, y), spec) * cell * cell;
            }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("kernel gradient closes the removable singularity and the support") {
    const KernelSpec spec = make_kernel(1.0);
    CHECK(kernel_gradient({0.0, 0.0}, spec) == Vec2{0.0, 0.0});
    CHECK(kernel_gradient({2.0, 0.0}, spec) == Vec2{0.0, 0.0});
    CHECK(kernel_gradient({0.0, 3.0}, spec) == Vec2{0.0, 0.0});
}

TEST_CASE("kernel gradient at q = 1 matches the differentiated closed form") {
    // dW/dq = -5 alpha q (2-q)^3, so at r = h = 1: gradient x = -5 alpha
    const KernelSpec spec = make_kernel(1.0);
    const double alpha = 7.0 / (32.0 * std::numbers::pi);
    const Vec2 g = kernel_gradient({1.0, 0.0}, spec);
    CHECK(g.x == doctest::Approx(-5.0 * alpha).epsilon(1e-13));
    CHECK(g.y == 0.0);
    CHECK(g.x == doctest::Approx(fd_kernel_deriv(1.0, spec)).epsilon(1e-8));
}

TEST_CASE("kernel gradient is antisymmetric and radially inward") {
    const KernelSpec spec = make_kernel(0.3);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(-0.7, 0.7);
    for (int k = 0; k < 200; ++k) {
        const Vec2 r{coord(rng), coord(rng)};
        const Vec2 g = kernel_gradient(r, spec);
        const Vec2 g_neg = kernel_gradient(-r, spec);
        CHECK(g_neg.x == -g.x);
        CHECK(g_neg.y == -g.y);
        CHECK(dot(g, r) <= 0.0);
    }
}

TEST_CASE("kernel gradient matches central finite differences") {
    const KernelSpec spec = make_kernel(0.045);
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> radius(1e-4 * spec.h,
                                                  2.0 * spec.h);
    for (int k = 0; k < 100; ++k) {
        const double r = radius(rng);
        const Vec2 g = kernel_gradient({r, 0.0}, spec);
        const double fd = fd_kernel_deriv(r, spec);
        const double denom = std::max(std::abs(fd), 1e-12 * spec.alpha_d / spec.h);
        CHECK(std::abs(g.x - fd) / denom <= 1e-5);
    }
}

TEST_CASE("stress invariants of simple states") {
    SUBCASE("hydrostatic compression") {
        const double q = 40e3;
        const StressInvariants inv = invariants(SymTensor2D::isotropic(-q));
        CHECK(inv.p == doctest::Approx(q).epsilon(1e-15));
        CHECK(inv.j2 == doctest::Approx(0.0));
        CHECK(inv.deviator.xx == doctest::Approx(0.0));
    }
    SUBCASE("zero stress") {
        const StressInvariants inv = invariants({});
        CHECK(inv.p == 0.0);
        CHECK(inv.j2 == 0.0);
    }
    SUBCASE("mixed state against componentwise arithmetic") {
        const SymTensor2D t{-100e3, -200e3, -150e3, 30e3};
        const StressInvariants inv = invariants(t);
        // independent componentwise oracle
        const double p = -(t.xx + t.yy + t.zz) / 3.0;
        const double sxx = t.xx + p, syy = t.yy + p, szz = t.zz + p;
        const double j2 =
            0.5 * (sxx * sxx + syy * syy + szz * szz + 2.0 * t.xy * t.xy);
        CHECK(inv.p == doctest::Approx(150e3).epsilon(1e-15));
        CHECK(inv.p == doctest::Approx(p).epsilon(1e-15));
        CHECK(inv.j2 == doctest::Approx(j2).epsilon(1e-15));
        CHECK(inv.deviator.xx == doctest::Approx(sxx).epsilon(1e-15));
        CHECK(inv.deviator.xy == t.xy);
    }
}

TEST_CASE("invariants decomposition reconstructs the input") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> stress(-3e5, 3e5);
    for (int k = 0; k < 200; ++k) {
        const SymTensor2D t{stress(rng), stress(rng), stress(rng), stress(rng)};
        const StressInvariants inv = invariants(t);
        const SymTensor2D back = inv.deviator - SymTensor2D::isotropic(inv.p);
        const double scale = std::abs(inv.p) + 3e5;
        CHECK(std::abs(back.xx - t.xx) <= 4e-16 * scale);
        CHECK(std::abs(back.yy - t.yy) <= 4e-16 * scale);
        CHECK(std::abs(back.zz - t.zz) <= 4e-16 * scale);
        CHECK(back.xy == t.xy);
        CHECK(std::abs(inv.deviator.trace()) <= 4e-16 * scale);
    }
}

TEST_CASE("tensor algebra basics used by the solvers") {
    const Tensor2D a{1.1, 0.05, 0.0, 0.95};
    const Tensor2D inv = a.inverse();
    const Tensor2D id = a * inv;
    CHECK(id.xx == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(id.yy == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(id.xy) <= 1e-16);
    CHECK(std::abs(id.yx) <= 1e-16);
    CHECK(a.det() == doctest::Approx(1.1 * 0.95).epsilon(1e-15));

    const Vec2 u{2.0, -1.0}, v{0.5, 3.0};
    const Tensor2D op = outer(u, v);
    CHECK(op.xx == 1.0);
    CHECK(op.xy == 6.0);
    CHECK(op.yx == -0.5);
    CHECK(op.yy == -3.0);
}

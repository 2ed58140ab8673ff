#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "geosph/neighbors.hpp"

using namespace geosph;

namespace {

// O(N^2) oracle: every unordered pair below the cutoff
std::set<std::pair<std::uint32_t, std::uint32_t>> brute_force_pairs(
    const std::vector<Vec2>& pos, double cutoff) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t i = 0; i < pos.size(); ++i)
        for (std::uint32_t j = i + 1; j < pos.size(); ++j)
            if (norm2(pos[i] - pos[j]) < cutoff * cutoff) out.insert({i, j});
    return out;
}

std::vector<Vec2> lattice(int nx, int ny, double dp) {
    std::vector<Vec2> pos;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            pos.push_back({(i + 0.5) * dp, (j + 0.5) * dp});
    return pos;
}

} // namespace

TEST_CASE("trivial pair sets") {
    const KernelSpec spec = make_kernel(1.0);
    SUBCASE("two particles just outside the cutoff") {
        const std::vector<Vec2> pos{{0.0, 0.0}, {2.1, 0.0}};
        CHECK(build_pairs(pos, spec).pairs.empty());
    }
    SUBCASE("two particles inside the cutoff") {
        const std::vector<Vec2> pos{{0.0, 0.0}, {1.9, 0.0}};
        const PairList list = build_pairs(pos, spec);
        REQUIRE(list.pairs.size() == 1);
        CHECK(list.pairs[0].i == 0);
        CHECK(list.pairs[0].j == 1);
        CHECK(list.pairs[0].r == doctest::Approx(1.9));
        CHECK(list.pairs[0].r_vec.x == doctest::Approx(-1.9));
    }
    SUBCASE("single particle") {
        const std::vector<Vec2> pos{{0.5, 0.5}};
        CHECK(build_pairs(pos, spec).pairs.empty());
    }
    SUBCASE("empty input") {
        CHECK(build_pairs({}, spec).pairs.empty());
    }
}

TEST_CASE("cell search equals brute force on random clouds") {
    std::mt19937_64 rng(2024);
    for (int seed_case = 0; seed_case < 50; ++seed_case) {
        std::uniform_int_distribution<int> count(2, 500);
        std::uniform_real_distribution<double> coord(-3.0, 3.0);
        std::uniform_real_distribution<double> smoothing(0.05, 0.8);
        const int n = count(rng);
        const double h = smoothing(rng);
        std::vector<Vec2> pos(n);
        for (Vec2& p : pos) p = {coord(rng), coord(rng)};

        const KernelSpec spec = make_kernel(h);
        const PairList list = build_pairs(pos, spec);
        std::set<std::pair<std::uint32_t, std::uint32_t>> got;
        for (const Pair& p : list.pairs) {
            CHECK(p.i < p.j);
            got.insert({p.i, p.j});
        }
        CHECK(got.size() == list.pairs.size()); // no duplicates
        CHECK(got == brute_force_pairs(pos, spec.support_radius));
    }
}

TEST_CASE("pair geometry is consistent with direct kernel evaluation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<Vec2> pos(60);
    for (Vec2& p : pos) p = {coord(rng), coord(rng)};
    const KernelSpec spec = make_kernel(0.2);
    const PairList list = build_pairs(pos, spec);
    REQUIRE(!list.pairs.empty());
    for (const Pair& p : list.pairs) {
        const Vec2 rv = pos[p.i] - pos[p.j];
        CHECK(p.r_vec == rv);
        CHECK(p.r == doctest::Approx(norm(rv)).epsilon(1e-15));
        CHECK(p.w == doctest::Approx(kernel_value(p.r, spec)).epsilon(1e-15));
        const Vec2 g = kernel_gradient(rv, spec);
        CHECK(p.grad_w.x == doctest::Approx(g.x).epsilon(1e-15));
        CHECK(p.grad_w.y == doctest::Approx(g.y).epsilon(1e-15));
    }
}

TEST_CASE("interior lattice neighbor count at dp = h/1.5") {
    const double h = 0.15;
    const double dp = h / 1.5;
    const std::vector<Vec2> pos = lattice(15, 15, dp);
    const KernelSpec spec = make_kernel(h);
    const PairList list = build_pairs(pos, spec);

    std::vector<int> degree(pos.size(), 0);
    for (const Pair& p : list.pairs) {
        ++degree[p.i];
        ++degree[p.j];
    }
    // center particle: support radius 3 dp reaches 28 lattice neighbors
    const int center = 7 * 15 + 7;
    const auto brute = brute_force_pairs(pos, spec.support_radius);
    int brute_degree = 0;
    for (const auto& [i, j] : brute)
        if (i == static_cast<std::uint32_t>(center) ||
            j == static_cast<std::uint32_t>(center))
            ++brute_degree;
    CHECK(degree[center] == brute_degree);
    CHECK(degree[center] == 28);
}

TEST_CASE("refresh keeps the index set and re-evaluates geometry") {
    std::vector<Vec2> pos = lattice(6, 6, 0.1);
    const KernelSpec spec = make_kernel(0.15);
    PairList list = build_pairs(pos, spec);
    const std::size_t n_pairs = list.pairs.size();
    for (Vec2& p : pos) p += {0.01, -0.005};
    refresh_pair_geometry(list, pos, spec);
    CHECK(list.pairs.size() == n_pairs);
    for (const Pair& p : list.pairs) {
        const Vec2 rv = pos[p.i] - pos[p.j];
        CHECK(p.r_vec == rv);
    }
}

TEST_CASE("correction matrices") {
    const double dp = 0.1;
    const double h = 1.5 * dp;
    const KernelSpec spec = make_kernel(h);

    SUBCASE("interior of a regular lattice is close to identity") {
        const std::vector<Vec2> pos = lattice(21, 21, dp);
        std::vector<double> v0(pos.size(), dp * dp);
        PairList list = build_pairs(pos, spec);
        const CorrectionField field = compute_correction(list, v0, pos.size());
        CHECK(field.fallback_count == 0);
        const Tensor2D& L = field.L[10 * 21 + 10];
        CHECK(frobenius_norm(L - Tensor2D::identity()) < 0.05);
    }

    SUBCASE("affine test map is reproduced exactly") {
        const std::vector<Vec2> ref = lattice(12, 12, dp);
        std::vector<double> v0(ref.size(), dp * dp);
        PairList list = build_pairs(ref, spec);
        const CorrectionField field = compute_correction(list, v0, ref.size());

        const Tensor2D a{1.1, 0.05, 0.0, 0.95};
        // gradient sum of the mapped positions must recover A everywhere,
        // boundaries included
        std::vector<Tensor2D> grad(ref.size());
        for (const Pair& p : list.pairs) {
            const Vec2 d = (a * ref[p.i]) - (a * ref[p.j]);
            const Tensor2D op = outer(d, p.grad_w);
            grad[p.i] -= op * v0[p.j];
            grad[p.j] -= op * v0[p.i];
        }
        for (std::size_t i = 0; i < ref.size(); ++i) {
            const Tensor2D f = grad[i] * field.L[i];
            CHECK(frobenius_norm(f - a) <= 1e-12);
        }
    }

    SUBCASE("gradient of a linear field is exact with correction") {
        const std::vector<Vec2> ref = lattice(10, 10, dp);
        std::vector<double> v0(ref.size(), dp * dp);
        PairList list = build_pairs(ref, spec);
        const CorrectionField field = compute_correction(list, v0, ref.size());
        // scalar field f = 3x - 2y + 1, gradient (3, -2)
        auto f = [](const Vec2& p) { return 3.0 * p.x - 2.0 * p.y + 1.0; };
        std::vector<Vec2> grad(ref.size(), Vec2{});
        for (const Pair& p : list.pairs) {
            const double df = f(ref[p.i]) - f(ref[p.j]);
            grad[p.i] -= (df * v0[p.j]) * p.grad_w;
            grad[p.j] -= (df * v0[p.i]) * p.grad_w;
        }
        for (std::size_t i = 0; i < ref.size(); ++i) {
            const Vec2 corrected = field.L[i] * grad[i];
            CHECK(corrected.x == doctest::Approx(3.0).epsilon(1e-12));
            CHECK(corrected.y == doctest::Approx(-2.0).epsilon(1e-12));
        }
    }

    SUBCASE("isolated particle falls back to the identity") {
        const std::vector<Vec2> pos{{0.0, 0.0}, {5.0, 5.0}};
        std::vector<double> v0(pos.size(), dp * dp);
        PairList list = build_pairs(pos, spec);
        const CorrectionField field = compute_correction(list, v0, pos.size());
        CHECK(field.fallback_count == 2);
        CHECK(field.L[0].xx == 1.0);
        CHECK(field.L[0].xy == 0.0);
    }
}

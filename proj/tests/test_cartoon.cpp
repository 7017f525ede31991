#include <gtest/gtest.h>

#include <cmath>

#include "acurve/cartoon.hpp"

using namespace acurve;

namespace {

std::vector<double> sample(double (*g)(double), int n) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = g(static_cast<double>(i) / n);
    return v;
}

}  // namespace

TEST(Holder, Examples) {
    const int n = 4096;
    const double h = 1.0 / n;
    EXPECT_NEAR(holder_seminorm(sample([](double t) { return t; }, n), h, 1.0), 1.0, 1e-12);
    EXPECT_EQ(holder_seminorm(sample([](double) { return 2.5; }, n), h, 0.7), 0.0);
    const double sq = holder_seminorm(sample([](double t) { return std::sqrt(t); }, n), h, 0.5);
    EXPECT_GE(sq, 0.95);
    EXPECT_LE(sq, 1.0 + 1e-12);
}

TEST(Holder, RejectsBadInput) {
    std::vector<double> few(10, 0.0);
    EXPECT_THROW(holder_seminorm(few, 0.1, 0.5), std::invalid_argument);
    std::vector<double> many(100, 0.0);
    EXPECT_THROW(holder_seminorm(many, 0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(holder_seminorm(many, 0.1, 1.5), std::invalid_argument);
}

TEST(Holder, TwoDimensionalPlane) {
    const int n = 64;
    std::vector<double> v(static_cast<std::size_t>(n * n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) v[static_cast<std::size_t>(r * n + c)] = 3.0 * r / n - 0.5 * c / n;
    EXPECT_NEAR(holder_seminorm_2d(v, n, 1.0 / n, 1.0), 3.0, 1e-12);
}

TEST(StarDomain, CosineRadiusHolderConstant) {
    StarDomain d;
    d.rho_base = 0.3;
    d.cos_coeffs = {0.0, 0.01};
    d.gamma = 2.0;
    // |rho''| = 0.04 |cos 2 eta|, so Hol(rho', 1) = 0.04
    EXPECT_NEAR(d.holder_bound(), 0.04, 1e-15);
    EXPECT_NEAR(d.holder_estimate(), 0.04, 1e-4);
    EXPECT_LE(d.holder_estimate(), 0.04 + 1e-12);
}

TEST(StarDomain, ZeroCoefficientsIsDisk) {
    const auto d = StarDomain::disk(0.25);
    EXPECT_EQ(d.holder_bound(), 0.0);
    EXPECT_EQ(d.holder_estimate(), 0.0);
    EXPECT_TRUE(d.valid());
    EXPECT_TRUE(d.contains(0.5, 0.5));
    EXPECT_TRUE(d.contains(0.74, 0.5));
    EXPECT_FALSE(d.contains(0.76, 0.5));
}

TEST(StarDomain, RandomIsDeterministicAndValid) {
    for (std::uint64_t seed : {0ULL, 1ULL, 7ULL, 12345ULL}) {
        for (double gamma : {1.5, 2.0}) {
            const auto a = random_star_domain(gamma, 1.0, seed);
            const auto b = random_star_domain(gamma, 1.0, seed);
            EXPECT_EQ(a.cos_coeffs, b.cos_coeffs);
            EXPECT_EQ(a.sin_coeffs, b.sin_coeffs);
            EXPECT_EQ(a.rho_base, b.rho_base);
            EXPECT_TRUE(a.valid());
            EXPECT_LE(a.holder_estimate(), a.holder_bound() + 1e-12);
        }
    }
    EXPECT_NE(random_star_domain(2.0, 1.0, 1).cos_coeffs, random_star_domain(2.0, 1.0, 2).cos_coeffs);
}

TEST(StarDomain, RandomRejectsBadClass) {
    EXPECT_THROW(random_star_domain(1.0, 1.0, 0), std::invalid_argument);
    EXPECT_THROW(random_star_domain(2.5, 1.0, 0), std::invalid_argument);
    EXPECT_THROW(random_star_domain(2.0, 0.0, 0), std::invalid_argument);
}

TEST(BoundaryPoints, DiskAndAxes) {
    const auto d = StarDomain::disk(0.2, {0.4, 0.6});
    for (const auto& p : boundary_points(d, 37)) EXPECT_NEAR(std::hypot(p[0] - 0.4, p[1] - 0.6), 0.2, 1e-12);
    const auto four = boundary_points(StarDomain::disk(0.25), 4);
    ASSERT_EQ(four.size(), 4u);
    EXPECT_NEAR(four[0][0], 0.75, 1e-12);
    EXPECT_NEAR(four[0][1], 0.5, 1e-12);
    EXPECT_NEAR(four[1][0], 0.5, 1e-12);
    EXPECT_NEAR(four[1][1], 0.75, 1e-12);
    EXPECT_NEAR(four[2][0], 0.25, 1e-12);
    EXPECT_NEAR(four[3][1], 0.25, 1e-12);
    EXPECT_THROW(boundary_points(d, 2), std::invalid_argument);
}

TEST(BoundaryPoints, FollowRadius) {
    const auto d = random_star_domain(2.0, 1.0, 3);
    const auto pts = boundary_points(d, 101);
    for (int i = 0; i < 101; ++i) {
        const auto& p = pts[static_cast<std::size_t>(i)];
        EXPECT_NEAR(std::hypot(p[0] - d.center[0], p[1] - d.center[1]), d.radius(2.0 * pi * i / 101), 1e-12);
    }
}

TEST(SmoothField, NormBoundAndGradient) {
    const auto f = random_smooth_field(2.0, 1.0, 5);
    EXPECT_LE(f.cbeta_norm_bound(), 0.5 + 1e-12);
    const double h = 1e-6;
    for (double x : {0.1, 0.37, 0.8}) {
        const auto g = f.gradient(x, 0.3);
        EXPECT_NEAR(g[0], (f(x + h, 0.3) - f(x - h, 0.3)) / (2 * h), 1e-6);
        EXPECT_NEAR(g[1], (f(x, 0.3 + h) - f(x, 0.3 - h)) / (2 * h), 1e-6);
    }
}

TEST(Cartoon, RandomSpecsAreValid) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        EXPECT_TRUE(random_cartoon(2.0, 2.0, 1.0, seed, true).valid());
        EXPECT_TRUE(random_cartoon(1.5, 1.5, 1.0, seed, false).valid());
    }
}

TEST(Rasterize, DiskPixels) {
    const Grid g = rasterize(binary_disk(0.25), 64);
    EXPECT_EQ(g(32, 32), 1.0);
    EXPECT_EQ(g(0, 0), 0.0);
    for (const auto& v : g.values) EXPECT_TRUE(v == 1.0 || v == 0.0);
}

TEST(Rasterize, DiskAreaQuadrature) {
    for (int m : {64, 128, 256}) {
        const Grid g = rasterize(binary_disk(0.25), m);
        double s = 0.0;
        for (const auto& v : g.values) s += v.real();
        EXPECT_NEAR(s / (static_cast<double>(m) * m), pi * 0.0625, 4.0 / m);
    }
}

TEST(Rasterize, SmoothOnlyWhenF1Vanishes) {
    auto spec = random_cartoon(2.0, 2.0, 1.0, 4, false);
    spec.f1 = SmoothField::constant(0.0);
    const Grid g = rasterize(spec, 32);
    for (int i = 0; i < 32; ++i)
        for (int k = 0; k < 32; ++k) EXPECT_EQ(g(i, k).real(), spec.f0(i / 32.0, k / 32.0));
}

TEST(Rasterize, RefinementConsistency) {
    const auto spec = random_cartoon(2.0, 2.0, 1.0, 9, false);
    const Grid fine = rasterize(spec, 64);
    const Grid coarse = rasterize(spec, 32, 2);
    for (int i = 0; i < 32; ++i)
        for (int k = 0; k < 32; ++k) {
            double acc = 0.0;
            for (int q1 = 0; q1 < 2; ++q1)
                for (int q2 = 0; q2 < 2; ++q2) acc += fine(2 * i + q1, 2 * k + q2).real();
            EXPECT_EQ(coarse(i, k).real(), acc / 4);
        }
}

TEST(Rasterize, DeterministicAndChecked) {
    const auto spec = random_cartoon(2.0, 2.0, 1.0, 2, true);
    EXPECT_EQ(rasterize(spec, 32).values, rasterize(spec, 32).values);
    EXPECT_THROW(rasterize(spec, 48), std::invalid_argument);
    EXPECT_THROW(rasterize(spec, 32, 0), std::invalid_argument);
}

TEST(CartoonJson, RoundTrip) {
    const auto spec = random_cartoon(1.5, 2.0, 1.0, 11, false);
    const auto back = cartoon_from_json(nlohmann::json::parse(to_json(spec).dump()));
    EXPECT_EQ(to_json(back), to_json(spec));
    EXPECT_EQ(rasterize(back, 32).values, rasterize(spec, 32).values);
}

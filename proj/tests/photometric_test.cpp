// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/photometric.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "irtps/parallel.hpp"
#include "test_util.hpp"

using namespace irtps;

namespace {

LightSet six_lights() {
    LightSet ls;
    ls.add(normalized(Vec3{0.3, 0.1, 0.9}));
    ls.add(normalized(Vec3{-0.4, 0.2, 0.8}));
    ls.add(normalized(Vec3{0.1, -0.5, 0.85}));
    ls.add(normalized(Vec3{-0.2, -0.3, 0.95}), 1.5);
    ls.add(normalized(Vec3{0.5, 0.4, 0.75}), 0.8);
    ls.add(normalized(Vec3{0.0, 0.6, 0.8}));
    return ls;
}

// Lambertian forward model: one lit pixel under the given lights.
std::vector<double> shade(const LightSet& ls, const Vec3& n, double rho) {
    std::vector<double> a;
    for (int k = 0; k < ls.count(); ++k) {
        a.push_back(rho * ls.intensities[k] * std::max(0.0, dot(ls.directions[k], n)));
    }
    return a;
}

// Stack of 3-channel images for one homogeneous quad of pixels.
Dataset tiny_stack(const LightSet& ls, const Vec3& n, const Vec3& rho) {
    Dataset d;
    d.lights = ls;
    for (int k = 0; k < ls.count(); ++k) {
        double s = ls.intensities[k] * std::max(0.0, dot(ls.directions[k], n));
        Image img(2, 2, 3);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                img.at(r, c, 0) = static_cast<float>(rho.x * s);
                img.at(r, c, 1) = static_cast<float>(rho.y * s);
                img.at(r, c, 2) = static_cast<float>(rho.z * s);
            }
        }
        d.images.push_back(img);
    }
    return d;
}

}  // namespace

TEST_SUITE("photometric") {

TEST_CASE("recovers the forward model exactly (all rows lit)") {
    LightSet ls = six_lights();
    std::mt19937_64 rng(123);
    for (int i = 0; i < 50; ++i) {
        Vec3 n = test::random_unit(rng, 0.45);
        double rho = 0.1 + 0.9 * (i / 50.0);
        std::vector<double> a = shade(ls, n, rho);
        bool all_lit = true;
        for (double v : a) all_lit &= v > 1e-6;
        if (!all_lit) continue;

        PixelSolution sol = solve_pixel(a, ls, 0.0);
        REQUIRE(sol.valid);
        CHECK(std::abs(sol.n.x - n.x) < 1e-9);
        CHECK(std::abs(sol.n.y - n.y) < 1e-9);
        CHECK(std::abs(sol.n.z - n.z) < 1e-9);
        CHECK(sol.rho == doctest::Approx(rho).epsilon(1e-9));
        CHECK(sol.rows_used.size() == a.size());
    }
}

TEST_CASE("least-squares optimality: no 3-vector beats the solution") {
    // Corrupt the observations so the system is inconsistent, then verify
    // the returned rho*n minimizes the quadratic residual against 100
    // random perturbations.
    LightSet ls = six_lights();
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    Vec3 n = normalized(Vec3{0.25, -0.15, 0.95});
    std::vector<double> a = shade(ls, n, 0.7);
    for (double& v : a) v = std::max(0.0, v + noise(rng));

    PixelSolution sol = solve_pixel(a, ls, 0.0);
    REQUIRE(sol.valid);
    Vec3 best = sol.n * sol.rho;

    auto residual = [&](const Vec3& m) {
        double sum = 0.0;
        for (int k = 0; k < ls.count(); ++k) {
            double pred = ls.intensities[k] * dot(ls.directions[k], m);
            sum += (pred - a[static_cast<size_t>(k)]) * (pred - a[static_cast<size_t>(k)]);
        }
        return sum;
    };
    double r0 = residual(best);
    std::uniform_real_distribution<double> d(-0.02, 0.02);
    for (int i = 0; i < 100; ++i) {
        Vec3 probe{best.x + d(rng), best.y + d(rng), best.z + d(rng)};
        CHECK(residual(probe) >= r0 - 1e-15);
    }
}

TEST_CASE("image scale moves albedo, not normals") {
    LightSet ls = six_lights();
    Vec3 n = normalized(Vec3{-0.3, 0.2, 0.93});
    std::vector<double> a = shade(ls, n, 0.6);
    PixelSolution s1 = solve_pixel(a, ls, 0.0);
    std::vector<double> a2 = a;
    for (double& v : a2) v *= 3.5;
    PixelSolution s2 = solve_pixel(a2, ls, 0.0);
    REQUIRE(s1.valid);
    REQUIRE(s2.valid);
    CHECK(std::abs(s1.n.x - s2.n.x) < 1e-12);
    CHECK(std::abs(s1.n.y - s2.n.y) < 1e-12);
    CHECK(std::abs(s1.n.z - s2.n.z) < 1e-12);
    CHECK(s2.rho == doctest::Approx(3.5 * s1.rho).epsilon(1e-12));
}

TEST_CASE("shadowed rows are dropped when enough rows remain") {
    LightSet ls = six_lights();
    Vec3 n = normalized(Vec3{0.1, 0.2, 0.97});
    std::vector<double> a = shade(ls, n, 0.8);
    // Fake a cast shadow on two observations: values at zero sit below any
    // positive threshold, and the remaining four rows still determine n.
    a[1] = 0.0;
    a[4] = 0.0;
    PixelSolution sol = solve_pixel(a, ls, 1e-6);
    REQUIRE(sol.valid);
    CHECK(sol.rows_used.size() == 4);
    CHECK(std::abs(sol.n.x - n.x) < 1e-9);
    CHECK(sol.rho == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("shadow trimming never drops below three rows") {
    LightSet ls;
    ls.add(normalized(Vec3{0.3, 0.1, 0.9}));
    ls.add(normalized(Vec3{-0.4, 0.2, 0.8}));
    ls.add(normalized(Vec3{0.1, -0.5, 0.85}));
    std::vector<double> a = {0.5, 0.0, 0.4};  // one dark row, only 3 lights
    PixelSolution sol = solve_pixel(a, ls, 1e-6);
    // All rows must be kept (dropping would leave 2), so the solve runs on
    // the full, now-inconsistent system and stays valid.
    CHECK(sol.rows_used.size() == 3);
    CHECK(sol.valid);
}

TEST_CASE("all-zero pixels are invalid with the canonical placeholder") {
    LightSet ls = six_lights();
    std::vector<double> a(static_cast<size_t>(ls.count()), 0.0);
    PixelSolution sol = solve_pixel(a, ls, 1e-6);
    CHECK(!sol.valid);
    CHECK(sol.rho == 0.0);
    CHECK(sol.n.x == 0.0);
    CHECK(sol.n.y == 0.0);
    CHECK(sol.n.z == 1.0);
}

TEST_CASE("rank-deficient lighting invalidates the pixel") {
    LightSet ls;  // coplanar directions: rank 2
    ls.add(normalized(Vec3{0.5, 0.0, 0.87}));
    ls.add(normalized(Vec3{-0.5, 0.0, 0.87}));
    ls.add(Vec3{0.0, 0.0, 1.0});
    std::vector<double> a = {0.4, 0.3, 0.5};
    PixelSolution sol = solve_pixel(a, ls, 0.0);
    CHECK(!sol.valid);
}

TEST_CASE("solve_maps recovers per-channel albedo and flags dark pixels") {
    LightSet ls = six_lights();
    Vec3 n = normalized(Vec3{0.2, -0.1, 0.95});
    Vec3 rho{0.8, 0.5, 0.3};
    Dataset d = tiny_stack(ls, n, rho);
    // Black out one pixel across the whole stack.
    for (Image& img : d.images) {
        img.at(1, 1, 0) = img.at(1, 1, 1) = img.at(1, 1, 2) = 0.0f;
    }
    PsMaps maps = solve_maps(d);
    CHECK(maps.valid.at(0, 0));
    CHECK(!maps.valid.at(1, 1));
    CHECK(!maps.normals.mask.at(1, 1));
    Vec3 got = maps.normals.at(0, 0);
    // Inputs pass through float storage, so recovery is float-accurate.
    CHECK(std::abs(got.x - n.x) < 1e-6);
    CHECK(std::abs(got.y - n.y) < 1e-6);
    CHECK(std::abs(got.z - n.z) < 1e-6);
    CHECK(maps.albedo.at(0, 0, 0) == doctest::Approx(rho.x).epsilon(1e-6));
    CHECK(maps.albedo.at(0, 0, 1) == doctest::Approx(rho.y).epsilon(1e-6));
    CHECK(maps.albedo.at(0, 0, 2) == doctest::Approx(rho.z).epsilon(1e-6));
}

TEST_CASE("solve_maps output is identical for any thread count") {
    LightSet ls = six_lights();
    std::mt19937_64 rng(55);
    Dataset d;
    d.lights = ls;
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    for (int k = 0; k < ls.count(); ++k) {
        Image img(9, 7, 3);
        for (float& v : img.data) v = u(rng);
        d.images.push_back(img);
    }
    set_max_threads(1);
    PsMaps a = solve_maps(d);
    set_max_threads(5);
    PsMaps b = solve_maps(d);
    set_max_threads(0);
    CHECK(a.normals.n == b.normals.n);
    CHECK(a.albedo.rho == b.albedo.rho);
    CHECK(a.valid.bits == b.valid.bits);
}

}  // TEST_SUITE

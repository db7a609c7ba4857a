// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

// Microbenchmarks for the pipeline's hot paths: rendering, the per-pixel
// photometric solve, Poisson integration, and environment extraction.

#include <benchmark/benchmark.h>

#include <cmath>

#include "irtps/envextract.hpp"
#include "irtps/integration.hpp"
#include "irtps/photometric.hpp"
#include "irtps/render.hpp"
#include "irtps/scene.hpp"
#include "irtps/scene_config.hpp"

namespace {

using namespace irtps;

SceneConfig sphere_config(int resolution, int spp, int max_bounces) {
    SceneConfig cfg;
    cfg.object_type = "sphere";
    cfg.object_radius = 0.5;
    cfg.resolution = resolution;
    cfg.spp = spp;
    cfg.max_bounces = max_bounces;
    cfg.seed = 1;
    return cfg;
}

void BM_RenderDirect(benchmark::State& state) {
    const int res = static_cast<int>(state.range(0));
    BuiltScene bs = build_scene(sphere_config(res, 1, 1));
    bs.scene.lights = LightSet::ring(8, 30.0);
    SamplerConfig sc{1, 1, 1};
    for (auto _ : state) {
        RenderResult r = render(bs.scene, sc);
        benchmark::DoNotOptimize(r.total.data.data());
    }
    state.SetItemsProcessed(state.iterations() * res * res);
}
BENCHMARK(BM_RenderDirect)->Arg(64)->Arg(128);

void BM_RenderBounced(benchmark::State& state) {
    const int spp = static_cast<int>(state.range(0));
    BuiltScene bs = build_scene(sphere_config(32, spp, 4));
    bs.scene.lights = LightSet::ring(8, 30.0);
    SamplerConfig sc{spp, 4, 1};
    for (auto _ : state) {
        RenderResult r = render(bs.scene, sc);
        benchmark::DoNotOptimize(r.total.data.data());
    }
    state.SetItemsProcessed(state.iterations() * 32 * 32 * spp);
}
BENCHMARK(BM_RenderBounced)->Arg(16)->Arg(64);

void BM_SolveMaps(benchmark::State& state) {
    const int res = static_cast<int>(state.range(0));
    SceneConfig cfg = sphere_config(res, 4, 2);
    Dataset d = render_dataset(cfg, LightSet::ring(8, 30.0));
    for (auto _ : state) {
        PsMaps maps = solve_maps(d);
        benchmark::DoNotOptimize(maps.valid.count());
    }
    state.SetItemsProcessed(state.iterations() * res * res);
}
BENCHMARK(BM_SolveMaps)->Arg(32)->Arg(64);

void BM_Integrate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double cx = (n - 1) / 2.0;
    GradientField g(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            size_t i = g.index(r, c);
            g.p[i] = 0.008 * (c + 0.5 - cx);
            g.q[i] = -0.006 * (r - 0.5 - cx);
            g.mask.bits[i] = 1;
        }
    }
    for (auto _ : state) {
        IntegrationResult res = integrate(g);
        benchmark::DoNotOptimize(res.height.z.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Integrate)->Arg(64)->Arg(128);

void BM_ExtractFill(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    const int res = 64;
    EnvironmentBox env;
    env.size = {2.0, 2.0, 2.0};
    for (int w = 0; w < kWallCount; ++w) env.albedo[w] = {0.8, 0.8, 0.8};
    HeightField flat(res, res);
    for (auto& b : flat.mask.bits) b = 1;
    ReconSurface surface;
    surface.geom = make_surface(flat, 0.0, env.size.x / res);
    surface.normals = NormalMap(res, res);
    surface.albedo = AlbedoMap(res, res, 3);
    for (int r = 0; r < res; ++r) {
        for (int c = 0; c < res; ++c) {
            surface.normals.set(r, c, {0.0, 0.0, 1.0});
            surface.normals.mask.set(r, c, true);
            for (int ch = 0; ch < 3; ++ch) surface.albedo.at(r, c, ch) = 0.6;
            surface.albedo.mask.set(r, c, true);
        }
    }
    const double s = std::sqrt(0.5);
    const Vec3 light{s, 0.0, s};
    for (auto _ : state) {
        EnvIntensityImage e = extract(surface, env, light, 1.0, depth, 7);
        Image dense = fill_sparse(e);
        benchmark::DoNotOptimize(dense.data.data());
    }
    state.SetItemsProcessed(state.iterations() * res * res);
}
BENCHMARK(BM_ExtractFill)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();

// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "irtps/dataset.hpp"
#include "irtps/image.hpp"
#include "irtps/scene.hpp"

namespace irtps {

struct SamplerConfig {
    int spp = 1024;
    int max_bounces = 4;  // number of bounce images I^1..I^max
    std::uint64_t seed = 0;
};

struct RenderResult {
    Image total;                // sum of the bounce images, ascending order
    std::vector<Image> bounces;  // I^1 (direct, deterministic), I^2, ...
};

// Path tracing with next-event estimation at every vertex. The direct image
// I^1 is computed analytically per pixel (zero variance); I^k for k >= 2 is
// the cosine-sampled Monte-Carlo estimate. A unit-intensity directional
// light yields direct radiance exactly albedo * max(0, l . n). Identical
// seeds give bit-identical output regardless of thread count.
RenderResult render(const Scene& scene, const SamplerConfig& cfg);

// Per-bounce radiance of one pixel in double precision (statistics hooks).
std::vector<Vec3> render_pixel(const Scene& scene, const SamplerConfig& cfg, int r, int c);

// One render per light (only that light active) plus ground truth extracted
// from the scene geometry. Per-light sampling streams are keyed by the light
// direction's bit pattern, so light order never changes pixel values.
Dataset render_dataset(const SceneConfig& cfg, const LightSet& lights,
                       const std::filesystem::path& base_dir = {});

}  // namespace irtps

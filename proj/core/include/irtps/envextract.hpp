// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include "irtps/image.hpp"
#include "irtps/lights.hpp"
#include "irtps/maps.hpp"
#include "irtps/scene.hpp"

namespace irtps {

// Reconstructed surface as the reverted tracer sees it: placed world-space
// geometry for occlusion plus the per-pixel shading normals and albedo the
// photometric solve produced.
struct ReconSurface {
    HeightfieldSurface geom;
    NormalMap normals;
    AlbedoMap albedo;
};

// Sparse estimate of the environment-bounce image at one reflection depth:
// per valid pixel, the radiance contributed by chains with exactly `depth`
// diffuse wall interactions before the light.
struct EnvIntensityImage {
    Image values;          // 3-channel; masked-false pixels hold 0
    PixelMask mask;        // true where the single chain completed
    PixelMask silhouette;  // object footprint the dense fill is limited to
    int depth = 1;         // r in {1, 2, 3}
    int light_index = -1;  // set by extract_all
};

// From each valid pixel, follow one cosine-weighted chain (single sample)
// through exactly `depth` wall hits and gather
//   albedo_pixel * prod(wall albedos) * intensity * max(0, l . n_wall) * V.
// Chains that leave through the open face or strike the surface itself are
// masked invalid. With one seed, deeper depths extend the same chains, so
// masks nest across depths.
EnvIntensityImage extract(const ReconSurface& surface, const EnvironmentBox& env,
                          const Vec3& light_dir, double light_intensity, int depth,
                          std::uint64_t seed);

// Dense image: valid samples kept exactly, other silhouette pixels filled by
// inverse-distance-weighted (power 2) interpolation over the 8 nearest valid
// pixels; off-silhouette pixels stay 0. Throws on an empty mask.
Image fill_sparse(const EnvIntensityImage& e);

// extract + fill_sparse per light, sub-seeded by the light direction's bit
// pattern so permuting the light order permutes the outputs identically.
std::vector<Image> extract_all(const ReconSurface& surface, const EnvironmentBox& env,
                               const LightSet& lights, int depth, std::uint64_t seed);

// Debug artifacts: env_r{r}_light{k}_sparse.pfm / _mask.pgm / _dense.pfm.
void dump_env_debug(const EnvIntensityImage& e, const Image& dense,
                    const std::filesystem::path& dir, int light_index);

}  // namespace irtps

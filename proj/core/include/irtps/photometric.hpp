// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "irtps/dataset.hpp"
#include "irtps/image.hpp"
#include "irtps/lights.hpp"
#include "irtps/maps.hpp"
#include "irtps/vec3.hpp"

namespace irtps {

// Fraction of the stack's maximum intensity below which an observation is
// treated as shadowed and its light row dropped (only when >= 3 rows survive).
inline constexpr double kDefaultShadowThreshold = 1e-4;

struct PixelSolution {
    double rho = 0.0;
    Vec3 n{0.0, 0.0, 1.0};
    bool valid = false;
    std::vector<int> rows_used;  // light indices the solve kept
};

// Least-squares solve of a = rho * L n for one pixel. `a` holds one intensity
// per light; entries at or below `shadow_threshold_abs` are dropped together
// with their light rows provided at least 3 rows remain, otherwise all rows
// are used. All-zero input or an effectively rank-deficient light matrix
// yields an invalid solution (rho = 0, n = +z).
PixelSolution solve_pixel(const std::vector<double>& a, const LightSet& lights,
                          double shadow_threshold_abs);

struct PsMaps {
    AlbedoMap albedo;
    NormalMap normals;
    PixelMask valid;
};

// Per-pixel photometric stereo over the whole stack. Normals are solved on
// luminance (channel mean); per-channel albedo is then the scalar
// least-squares fit rho_c = sum_k a_ck s_k / sum_k s_k^2 with
// s_k = intensity_k * (l_k . n), over the rows the normal solve kept.
// `shadow_threshold` is relative to the stack's maximum luminance.
PsMaps solve_maps(const Dataset& stack, double shadow_threshold = kDefaultShadowThreshold);

}  // namespace irtps

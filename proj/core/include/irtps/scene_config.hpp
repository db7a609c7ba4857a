// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "irtps/vec3.hpp"

namespace irtps {

enum class Wall { Left = 0, Right = 1, Back = 2, Floor = 3, Ceiling = 4 };
inline constexpr int kWallCount = 5;
const char* wall_name(Wall w);

// Parsed "key = value" scene description. Unset keys keep these defaults;
// object.type has no default and must be present.
struct SceneConfig {
    Vec3 box_size{2.4, 2.4, 2.4};
    Vec3 wall_albedo[kWallCount] = {
        {0.75, 0.1, 0.1},    // left
        {0.1, 0.75, 0.1},    // right
        {0.75, 0.75, 0.75},  // back
        {0.75, 0.75, 0.75},  // floor
        {0.75, 0.75, 0.75},  // ceiling
    };
    std::string object_type;  // "sphere" | "heightfield" | "concave-bowl"
    Vec3 object_albedo{0.6, 0.6, 0.6};
    double object_radius = 0.5;      // sphere radius / bowl rim radius
    double object_depth = 0.3;       // bowl depth at the center
    std::string object_height_map;   // PFM source, heightfield type only
    int spp = 1024;
    int max_bounces = 4;
    std::uint64_t seed = 0;
    int resolution = 128;
    // World-space z of the reconstructed surface's mean height when the
    // surface is placed back into the box (written by the renderer so later
    // stages can anchor a mean-zero height field).
    double surface_anchor = 0.0;
    bool has_surface_anchor = false;
};

// Splits "key = value" lines; '#' starts a comment, blank lines are skipped.
// Throws config_error naming the line on syntax errors.
std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text,
                                                                  const std::string& name);

SceneConfig parse_scene_config_text(const std::string& text, const std::string& name);
SceneConfig read_scene_config(const std::filesystem::path& path);
void write_scene_config(const SceneConfig& cfg, const std::filesystem::path& path);

}  // namespace irtps

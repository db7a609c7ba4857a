// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "irtps/image.hpp"
#include "irtps/lights.hpp"
#include "irtps/scene_config.hpp"

namespace irtps {

// One multi-light capture: Q images matched index-for-index with Q light
// directions, plus optional ground truth for evaluation.
struct Dataset {
    std::vector<Image> images;
    LightSet lights;
    std::optional<Image> gt_height;    // 1-channel
    std::optional<Image> gt_normals;   // 3-channel, raw float components
    std::optional<Image> gt_albedo;    // 3-channel
    std::optional<SceneConfig> scene;  // scene.cfg when present

    int count() const { return static_cast<int>(images.size()); }
    bool has_ground_truth() const { return gt_height && gt_normals && gt_albedo; }
};

std::string image_filename(int index);  // "image_000.pfm", ...

// lights.txt: one "lx ly lz" row per light. Rows off unit norm by more than
// 1e-6 are renormalized; more than 1e-2 is an error.
LightSet load_lights(const std::filesystem::path& path);
void save_lights(const LightSet& lights, const std::filesystem::path& path);

// Directory layout: lights.txt + image_###.pfm (### = 000..Q-1) + optional
// gt_height.pfm / gt_normals.pfm / gt_albedo.pfm / scene.cfg.
Dataset load_dataset(const std::filesystem::path& dir);
void save_dataset(const Dataset& d, const std::filesystem::path& dir);

}  // namespace irtps

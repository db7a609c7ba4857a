// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "irtps/errors.hpp"
#include "irtps/pfm.hpp"

namespace irtps {

std::string image_filename(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "image_%03d.pfm", index);
    return buf;
}

LightSet load_lights(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    LightSet lights;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        double x, y, z;
        if (!(ss >> x >> y >> z)) {
            // Allow trailing blank lines.
            std::string rest;
            ss.clear();
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw io_error(path.string() + " line " + std::to_string(lineno) +
                           ": expected three numbers");
        }
        double norm = std::sqrt(x * x + y * y + z * z);
        if (std::abs(norm - 1.0) > 1e-2) {
            throw io_error(path.string() + " line " + std::to_string(lineno) +
                           ": light direction norm " + std::to_string(norm) +
                           " deviates from 1 by more than 1e-2");
        }
        if (std::abs(norm - 1.0) > 1e-6) {
            x /= norm;
            y /= norm;
            z /= norm;
        }
        lights.add({x, y, z}, 1.0);
    }
    if (lights.count() == 0) throw io_error(path.string() + ": no light rows");
    return lights;
}

void save_lights(const LightSet& lights, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out.precision(17);
    for (int k = 0; k < lights.count(); ++k) {
        const Vec3& l = lights.directions[k];
        out << l.x << " " << l.y << " " << l.z << "\n";
    }
    if (!out) throw io_error("write failed: " + path.string());
}

Dataset load_dataset(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw io_error("not a dataset directory: " + dir.string());
    }
    Dataset d;
    d.lights = load_lights(dir / "lights.txt");

    int n_images = 0;
    while (std::filesystem::exists(dir / image_filename(n_images))) ++n_images;
    if (n_images != d.lights.count()) {
        throw io_error(dir.string() + ": light/image count mismatch, " +
                       std::to_string(d.lights.count()) + " light rows but " +
                       std::to_string(n_images) + " images");
    }
    d.images.reserve(n_images);
    for (int k = 0; k < n_images; ++k) {
        Image img = read_pfm(dir / image_filename(k));
        validate_radiance(img, image_filename(k).c_str());
        if (k > 0 && !img.same_shape(d.images[0])) {
            throw io_error(dir.string() + ": " + image_filename(k) + " shape differs from " +
                           image_filename(0));
        }
        d.images.push_back(std::move(img));
    }

    if (std::filesystem::exists(dir / "gt_height.pfm")) {
        d.gt_height = read_pfm(dir / "gt_height.pfm");
        if (d.gt_height->channels != 1) throw io_error("gt_height.pfm must be 1-channel");
    }
    if (std::filesystem::exists(dir / "gt_normals.pfm")) {
        d.gt_normals = read_pfm(dir / "gt_normals.pfm");
        if (d.gt_normals->channels != 3) throw io_error("gt_normals.pfm must be 3-channel");
    }
    if (std::filesystem::exists(dir / "gt_albedo.pfm")) {
        d.gt_albedo = read_pfm(dir / "gt_albedo.pfm");
        if (d.gt_albedo->channels != 3) throw io_error("gt_albedo.pfm must be 3-channel");
    }
    if (std::filesystem::exists(dir / "scene.cfg")) {
        d.scene = read_scene_config(dir / "scene.cfg");
    }
    return d;
}

void save_dataset(const Dataset& d, const std::filesystem::path& dir) {
    if (d.count() != d.lights.count()) {
        throw io_error("save_dataset: " + std::to_string(d.count()) + " images but " +
                       std::to_string(d.lights.count()) + " lights");
    }
    std::filesystem::create_directories(dir);
    save_lights(d.lights, dir / "lights.txt");
    for (int k = 0; k < d.count(); ++k) write_pfm(d.images[k], dir / image_filename(k));
    if (d.gt_height) write_pfm(*d.gt_height, dir / "gt_height.pfm");
    if (d.gt_normals) write_pfm(*d.gt_normals, dir / "gt_normals.pfm");
    if (d.gt_albedo) write_pfm(*d.gt_albedo, dir / "gt_albedo.pfm");
    if (d.scene) write_scene_config(*d.scene, dir / "scene.cfg");
}

}  // namespace irtps

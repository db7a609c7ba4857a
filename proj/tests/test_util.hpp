// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "irtps/image.hpp"
#include "irtps/vec3.hpp"

namespace irtps::test {

// Scratch directory under the system temp root; wiped on construction so
// reruns start clean, left behind afterwards for postmortems.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

inline bool same_bytes(const std::filesystem::path& a, const std::filesystem::path& b) {
    return slurp(a) == slurp(b);
}

inline float max_abs_diff(const Image& a, const Image& b) {
    if (!a.same_shape(b)) return std::numeric_limits<float>::infinity();
    float m = 0.0f;
    for (size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

inline Vec3 random_unit(std::mt19937_64& rng, double min_z = -1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        Vec3 v{u(rng), u(rng), u(rng)};
        double len = norm(v);
        if (len < 1e-3 || len > 1.0) continue;
        v = v / len;
        if (v.z >= min_z) return v;
    }
}

}  // namespace irtps::test

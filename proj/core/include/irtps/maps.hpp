// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "irtps/image.hpp"
#include "irtps/vec3.hpp"

namespace irtps {

/// Per-pixel unit surface normal in the camera frame (x right, y up,
/// z toward camera). Valid pixels satisfy |n| = 1 and n_z >= 0.
struct NormalMap {
    int width = 0;
    int height = 0;
    std::vector<double> n;  // 3 per pixel
    PixelMask mask;

    NormalMap() = default;
    NormalMap(int w, int h)
        : width(w), height(h), n(static_cast<size_t>(w) * h * 3, 0.0), mask(w, h) {}

    Vec3 at(int r, int c) const {
        size_t i = (static_cast<size_t>(r) * width + c) * 3;
        return {n[i], n[i + 1], n[i + 2]};
    }
    void set(int r, int c, const Vec3& v) {
        size_t i = (static_cast<size_t>(r) * width + c) * 3;
        n[i] = v.x;
        n[i + 1] = v.y;
        n[i + 2] = v.z;
    }
};

/// Per-pixel diffuse reflectance, one value per channel, >= 0.
struct AlbedoMap {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<double> rho;
    PixelMask mask;

    AlbedoMap() = default;
    AlbedoMap(int w, int h, int c)
        : width(w), height(h), channels(c),
          rho(static_cast<size_t>(w) * h * c, 0.0), mask(w, h) {}

    double at(int r, int c, int ch) const {
        return rho[(static_cast<size_t>(r) * width + c) * channels + ch];
    }
    double& at(int r, int c, int ch) {
        return rho[(static_cast<size_t>(r) * width + c) * channels + ch];
    }
};

/// Per-pixel height in pixel-pitch units.
struct HeightField {
    int width = 0;
    int height = 0;
    std::vector<double> z;
    PixelMask mask;

    HeightField() = default;
    HeightField(int w, int h)
        : width(w), height(h), z(static_cast<size_t>(w) * h, 0.0), mask(w, h) {}

    double at(int r, int c) const { return z[static_cast<size_t>(r) * width + c]; }
    double& at(int r, int c) { return z[static_cast<size_t>(r) * width + c]; }
};

// PFM-boundary conversions. Invalid pixels serialize as zeros; an all-zero
// normal marks a pixel invalid on load (heights and albedo borrow the normal
// map's mask, since zero is a legitimate value for both).

inline Image to_image(const HeightField& h) {
    Image img(h.width, h.height, 1);
    for (size_t i = 0; i < h.z.size(); ++i) {
        img.data[i] = h.mask.bits[i] ? static_cast<float>(h.z[i]) : 0.0f;
    }
    return img;
}

inline Image to_image(const NormalMap& m) {
    Image img(m.width, m.height, 3);
    for (size_t i = 0; i < static_cast<size_t>(m.width) * m.height; ++i) {
        if (!m.mask.bits[i]) continue;
        img.data[i * 3 + 0] = static_cast<float>(m.n[i * 3 + 0]);
        img.data[i * 3 + 1] = static_cast<float>(m.n[i * 3 + 1]);
        img.data[i * 3 + 2] = static_cast<float>(m.n[i * 3 + 2]);
    }
    return img;
}

inline Image to_image(const AlbedoMap& m) {
    Image img(m.width, m.height, m.channels);
    for (size_t i = 0; i < static_cast<size_t>(m.width) * m.height; ++i) {
        if (!m.mask.bits[i]) continue;
        for (int ch = 0; ch < m.channels; ++ch) {
            img.data[i * m.channels + ch] = static_cast<float>(m.rho[i * m.channels + ch]);
        }
    }
    return img;
}

inline NormalMap normals_from_image(const Image& img) {
    NormalMap m(img.width, img.height);
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        Vec3 n{img.data[i * 3], img.data[i * 3 + 1], img.data[i * 3 + 2]};
        double len = norm(n);
        if (len == 0.0) continue;
        n = n / len;
        m.n[i * 3 + 0] = n.x;
        m.n[i * 3 + 1] = n.y;
        m.n[i * 3 + 2] = n.z;
        m.mask.bits[i] = 1;
    }
    return m;
}

inline HeightField height_from_image(const Image& img, const PixelMask& mask) {
    HeightField h(img.width, img.height);
    h.mask = mask;
    for (size_t i = 0; i < h.z.size(); ++i) h.z[i] = img.data[i];
    return h;
}

inline AlbedoMap albedo_from_image(const Image& img, const PixelMask& mask) {
    AlbedoMap m(img.width, img.height, img.channels);
    m.mask = mask;
    for (size_t i = 0; i < img.data.size(); ++i) m.rho[i] = img.data[i];
    return m;
}

}  // namespace irtps

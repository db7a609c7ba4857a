// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace irtps {

/// Row-major float image, top row first, channels interleaved.
/// Radiance images are linear and non-negative; raw float grids (normal
/// components, heights) reuse the same container.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h, int c, float fill = 0.0f)
        : width(w), height(h), channels(c),
          data(static_cast<size_t>(w) * h * c, fill) {}

    size_t index(int r, int c, int ch = 0) const {
        return (static_cast<size_t>(r) * width + c) * channels + ch;
    }
    float& at(int r, int c, int ch = 0) { return data[index(r, c, ch)]; }
    float at(int r, int c, int ch = 0) const { return data[index(r, c, ch)]; }

    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

/// Per-pixel boolean grid annotating an image of the same dimensions.
struct PixelMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    PixelMask() = default;
    PixelMask(int w, int h, bool fill = false)
        : width(w), height(h), bits(static_cast<size_t>(w) * h, fill ? 1 : 0) {}

    bool at(int r, int c) const { return bits[static_cast<size_t>(r) * width + c] != 0; }
    void set(int r, int c, bool v) { bits[static_cast<size_t>(r) * width + c] = v ? 1 : 0; }

    size_t count() const {
        size_t n = 0;
        for (auto b : bits) n += b;
        return n;
    }
    bool same_shape(const PixelMask& o) const { return width == o.width && height == o.height; }
};

/// Channel mean, used as the luminance proxy for the normal solve.
Image luminance(const Image& img);

/// Intersection of two same-shaped masks.
PixelMask mask_and(const PixelMask& a, const PixelMask& b);

/// Throws io_error when the image holds a non-finite or negative value.
void validate_radiance(const Image& img, const char* what);

}  // namespace irtps

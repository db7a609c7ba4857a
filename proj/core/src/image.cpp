// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/image.hpp"

#include <cmath>
#include <string>

#include "irtps/errors.hpp"

namespace irtps {

Image luminance(const Image& img) {
    if (img.channels == 1) return img;
    Image out(img.width, img.height, 1);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            double sum = 0.0;
            for (int ch = 0; ch < img.channels; ++ch) sum += img.at(r, c, ch);
            out.at(r, c) = static_cast<float>(sum / img.channels);
        }
    }
    return out;
}

PixelMask mask_and(const PixelMask& a, const PixelMask& b) {
    PixelMask out(a.width, a.height);
    for (size_t i = 0; i < out.bits.size(); ++i) out.bits[i] = a.bits[i] & b.bits[i];
    return out;
}

void validate_radiance(const Image& img, const char* what) {
    for (size_t i = 0; i < img.data.size(); ++i) {
        float v = img.data[i];
        if (!std::isfinite(v) || v < 0.0f) {
            throw io_error(std::string(what) + ": non-finite or negative radiance at sample " +
                           std::to_string(i));
        }
    }
}

}  // namespace irtps

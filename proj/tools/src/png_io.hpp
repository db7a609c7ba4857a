// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IRTPS_TOOLS_PNG_IO_HPP_
#define IRTPS_TOOLS_PNG_IO_HPP_

#include <filesystem>

#include "irtps/image.hpp"

namespace irtps {

// Writes a linear-light image as an 8-bit sRGB PNG. Values are clamped to
// [0, 1] before encoding. One-channel images become grayscale PNGs,
// three-channel images RGB; other channel counts are rejected.
void write_png_srgb(const Image& img, const std::filesystem::path& path);

}  // namespace irtps

#endif  // IRTPS_TOOLS_PNG_IO_HPP_

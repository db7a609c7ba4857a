// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "irtps/image.hpp"

namespace irtps {

/// Reads a PFM file ("PF" 3-channel / "Pf" 1-channel, 32-bit floats).
/// The sign of the scale field selects endianness (negative = little).
/// Throws io_error naming the byte offset on malformed headers, truncated
/// payloads or NaN pixels. Negative pixel values are allowed (raw float
/// grids such as normal components use them).
Image read_pfm(const std::filesystem::path& path);

/// Writes img as little-endian PFM (scale -1.0). Round-trips are bit-exact.
void write_pfm(const Image& img, const std::filesystem::path& path);

/// Binary PGM (P5) mask dump: 255 where set, 0 elsewhere. Debug output only.
void write_pgm(const PixelMask& mask, const std::filesystem::path& path);

}  // namespace irtps

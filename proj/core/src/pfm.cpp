// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "irtps/pfm.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "irtps/errors.hpp"

namespace irtps {

namespace {

std::vector<char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

bool is_pfm_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Reads one whitespace-delimited token starting at or after `pos`.
std::string next_token(const std::vector<char>& bytes, size_t& pos, const std::string& path) {
    while (pos < bytes.size() && is_pfm_space(bytes[pos])) ++pos;
    size_t start = pos;
    while (pos < bytes.size() && !is_pfm_space(bytes[pos])) ++pos;
    if (start == pos) {
        throw io_error(path + ": malformed header, unexpected end of file at byte " +
                       std::to_string(start));
    }
    return std::string(bytes.begin() + static_cast<long>(start), bytes.begin() + static_cast<long>(pos));
}

std::uint32_t byteswap32(std::uint32_t v) {
    return ((v & 0xff000000u) >> 24) | ((v & 0x00ff0000u) >> 8) | ((v & 0x0000ff00u) << 8) |
           ((v & 0x000000ffu) << 24);
}

}  // namespace

Image read_pfm(const std::filesystem::path& path) {
    const std::vector<char> bytes = slurp(path);
    const std::string name = path.string();
    size_t pos = 0;

    std::string magic = next_token(bytes, pos, name);
    int channels;
    if (magic == "PF") {
        channels = 3;
    } else if (magic == "Pf") {
        channels = 1;
    } else {
        throw io_error(name + ": malformed header, bad magic \"" + magic + "\" at byte 0");
    }

    int width, height;
    double scale;
    try {
        width = std::stoi(next_token(bytes, pos, name));
        height = std::stoi(next_token(bytes, pos, name));
        scale = std::stod(next_token(bytes, pos, name));
    } catch (const std::logic_error&) {
        throw io_error(name + ": malformed header near byte " + std::to_string(pos));
    }
    if (width <= 0 || height <= 0) {
        throw io_error(name + ": malformed header, non-positive dimensions " +
                       std::to_string(width) + "x" + std::to_string(height));
    }
    if (scale == 0.0) {
        throw io_error(name + ": malformed header, zero scale at byte " + std::to_string(pos));
    }

    // Exactly one whitespace byte separates the scale token from the payload.
    if (pos >= bytes.size() || !is_pfm_space(bytes[pos])) {
        throw io_error(name + ": malformed header, missing separator at byte " +
                       std::to_string(pos));
    }
    ++pos;

    const bool file_little = scale < 0.0;
    const size_t values = static_cast<size_t>(width) * height * channels;
    const size_t need = values * 4;
    if (bytes.size() - pos < need) {
        throw io_error(name + ": truncated payload at byte " + std::to_string(bytes.size()) +
                       ", expected " + std::to_string(need) + " payload bytes, got " +
                       std::to_string(bytes.size() - pos));
    }

    Image img(width, height, channels);
    const char* payload = bytes.data() + pos;
    // PFM stores scanlines bottom-to-top.
    for (int fr = 0; fr < height; ++fr) {
        int r = height - 1 - fr;
        size_t row_off = static_cast<size_t>(fr) * width * channels * 4;
        for (int c = 0; c < width; ++c) {
            for (int ch = 0; ch < channels; ++ch) {
                size_t off = row_off + (static_cast<size_t>(c) * channels + ch) * 4;
                std::uint32_t u;
                std::memcpy(&u, payload + off, 4);
                if (file_little != (std::endian::native == std::endian::little)) u = byteswap32(u);
                float v = std::bit_cast<float>(u);
                if (std::isnan(v)) {
                    throw io_error(name + ": NaN pixel at byte " + std::to_string(pos + off));
                }
                img.at(r, c, ch) = v;
            }
        }
    }
    return img;
}

void write_pfm(const Image& img, const std::filesystem::path& path) {
    if (img.channels != 1 && img.channels != 3) {
        throw io_error("write_pfm: channels must be 1 or 3, got " + std::to_string(img.channels));
    }
    if (img.width <= 0 || img.height <= 0) {
        throw io_error("write_pfm: empty image");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");

    out << (img.channels == 3 ? "PF" : "Pf") << "\n"
        << img.width << " " << img.height << "\n"
        << "-1.0"
        << "\n";

    std::vector<char> row(static_cast<size_t>(img.width) * img.channels * 4);
    for (int fr = 0; fr < img.height; ++fr) {
        int r = img.height - 1 - fr;
        const float* src = img.data.data() + img.index(r, 0, 0);
        std::memcpy(row.data(), src, row.size());
        if constexpr (std::endian::native != std::endian::little) {
            for (size_t i = 0; i < row.size(); i += 4) {
                std::uint32_t u;
                std::memcpy(&u, row.data() + i, 4);
                u = byteswap32(u);
                std::memcpy(row.data() + i, &u, 4);
            }
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw io_error("write failed: " + path.string());
}

void write_pgm(const PixelMask& mask, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            out.put(mask.at(r, c) ? static_cast<char>(255) : static_cast<char>(0));
        }
    }
    if (!out) throw io_error("write failed: " + path.string());
}

}  // namespace irtps

// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#include "png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "irtps/errors.hpp"

namespace irtps {

namespace {

unsigned char encode_srgb(float v) {
    if (!(v > 0.0f)) v = 0.0f;
    if (v > 1.0f) v = 1.0f;
    double s = v <= 0.0031308 ? 12.92 * v
                              : 1.055 * std::pow(static_cast<double>(v), 1.0 / 2.4) - 0.055;
    int q = static_cast<int>(std::lround(s * 255.0));
    if (q < 0) q = 0;
    if (q > 255) q = 255;
    return static_cast<unsigned char>(q);
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};

}  // namespace

void write_png_srgb(const Image& img, const std::filesystem::path& path) {
    if (img.channels != 1 && img.channels != 3) {
        throw io_error("png output supports 1 or 3 channels, got " +
                       std::to_string(img.channels));
    }
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) throw io_error("cannot open " + path.string() + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw io_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw io_error("libpng error while writing " + path.string());
    }

    png_init_io(png, fp.get());
    int color = img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, img.width, img.height, 8, color, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<unsigned char> row(static_cast<size_t>(img.width) * img.channels);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            for (int ch = 0; ch < img.channels; ++ch) {
                row[static_cast<size_t>(c) * img.channels + ch] = encode_srgb(img.at(r, c, ch));
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace irtps

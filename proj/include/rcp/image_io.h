// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include "rcp/imaging.h"

namespace rcp::io {

/// 8-bit RGB PNG, sRGB-encoded. Throws Error(Io) on failure.
void write_png(const std::filesystem::path &path, const ColorImage &image);

/// Reads any PNG libpng understands (palette, gray, alpha, 16-bit) and returns
/// linear colors. Alpha is dropped. Throws Error(Io) on failure.
ColorImage read_png(const std::filesystem::path &path);

/// Portable float map. channels is 1 ("Pf") or 3 ("PF"); data holds rows top
/// to bottom, and is written bottom to top, little-endian, scale -1.0.
struct FloatImage {
    int width = 0;
    int height = 0;
    int channels = 3;
    std::vector<float> data;
    bool operator==(const FloatImage &) const = default;
};

void write_pfm(const std::filesystem::path &path, const FloatImage &image);
FloatImage read_pfm(const std::filesystem::path &path);

FloatImage depth_image(const FrameBuffer &fb);
FloatImage normal_image(const FrameBuffer &fb);

} // namespace rcp::io

// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "rcp/math.h"

namespace rcp {

/// Low-dynamic-range color. Channels are clamped to [0,1] whenever a color is
/// stored into a buffer; see ColorRGB::clamped.
struct ColorRGB {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    static ColorRGB clamped(double r, double g, double b);
    ColorRGB clamped() const { return clamped(r, g, b); }

    constexpr bool operator==(const ColorRGB &) const = default;
};

/// Continuous image coordinate; v grows downward (row 0 is the top row).
struct TexCoord {
    double u = 0.0;
    double v = 0.0;

    bool in_unit_square() const { return u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0; }
    constexpr bool operator==(const TexCoord &) const = default;
};

/// Coordinate of the center of pixel (i, j).
TexCoord pixel_center(int i, int j, int width, int height);

/// Everything a pass records about one (u,v) sample.
struct GBufferSample {
    ColorRGB color;
    double depth = 0.0; // +inf for environment hits
    Vec3 normal{0.0, 0.0, 1.0};
    std::uint32_t object_id = 0; // 0 is the environment
    Vec3 position;

    bool hit_environment() const { return depth == std::numeric_limits<double>::infinity(); }
    bool operator==(const GBufferSample &) const = default;
};

class FrameBuffer {
  public:
    /// Throws Error(InvalidDimensions) unless width, height >= 1.
    FrameBuffer(int width, int height, const GBufferSample &fill = {});

    int width() const { return width_; }
    int height() const { return height_; }

    const GBufferSample &at(int i, int j) const { return samples_[index(i, j)]; }

    /// Stores a sample with its color clamped to [0,1].
    void store(int i, int j, const GBufferSample &s);

    const std::vector<GBufferSample> &samples() const { return samples_; }

    bool operator==(const FrameBuffer &) const = default;

  private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(i);
    }

    int width_;
    int height_;
    std::vector<GBufferSample> samples_;
};

/// Color bilinear over the four nearest pixel centers, auxiliary channels from
/// the nearest center (ties go to the lower index). Throws Error(InvalidInput)
/// when uv is outside [0,1]^2.
GBufferSample sample_bilinear(const FrameBuffer &fb, TexCoord uv);

/// Plain color raster, used for environment maps, textures and file I/O.
class ColorImage {
  public:
    ColorImage() = default;
    ColorImage(int width, int height, ColorRGB fill = {});

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return pixels_.empty(); }

    const ColorRGB &at(int i, int j) const { return pixels_[static_cast<std::size_t>(j) * width_ + i]; }
    void store(int i, int j, ColorRGB c) { pixels_[static_cast<std::size_t>(j) * width_ + i] = c.clamped(); }

    bool operator==(const ColorImage &) const = default;

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<ColorRGB> pixels_;
};

ColorImage color_channel(const FrameBuffer &fb);

/// sRGB transfer functions on [0,1].
double srgb_encode(double linear);
double srgb_decode(double encoded);

/// Linear value whose 8-bit sRGB code is `code`.
double srgb_code_to_linear(std::uint8_t code);
std::uint8_t linear_to_srgb_code(double linear);

/// Mean over pixels and channels of |a - b|. Buffers must have equal size.
double mean_abs_color_difference(const FrameBuffer &a, const FrameBuffer &b);

} // namespace rcp

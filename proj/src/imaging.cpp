// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/imaging.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rcp/error.h"

namespace rcp {

namespace {

double clamp01(double x) {
    // NaN collapses to 0 so a stored channel is always in range.
    if (!(x > 0.0))
        return 0.0;
    return x < 1.0 ? x : 1.0;
}

struct AxisTaps {
    int lo;
    int hi;
    double frac;
    int nearest;
};

// Pixel centers sit at integer positions of x = u * size - 0.5. Positions within
// a hair of a center snap onto it so that (i + 0.5) / size always reproduces
// pixel i exactly, whatever rounding the division introduced.
AxisTaps axis_taps(double coord, int size) {
    double x = coord * size - 0.5;
    x = std::clamp(x, 0.0, static_cast<double>(size - 1));
    const double rounded = std::round(x);
    if (std::abs(x - rounded) < 1e-9)
        x = rounded;
    AxisTaps t;
    t.lo = static_cast<int>(std::floor(x));
    t.hi = std::min(t.lo + 1, size - 1);
    t.frac = x - t.lo;
    t.nearest = std::clamp(static_cast<int>(std::ceil(x - 0.5)), 0, size - 1);
    return t;
}

} // namespace

ColorRGB ColorRGB::clamped(double r, double g, double b) { return {clamp01(r), clamp01(g), clamp01(b)}; }

TexCoord pixel_center(int i, int j, int width, int height) {
    return {(i + 0.5) / width, (j + 0.5) / height};
}

FrameBuffer::FrameBuffer(int width, int height, const GBufferSample &fill) : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw Error(ErrorKind::InvalidDimensions,
                    "frame buffer dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    GBufferSample s = fill;
    s.color = s.color.clamped();
    samples_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), s);
}

void FrameBuffer::store(int i, int j, const GBufferSample &s) {
    GBufferSample &dst = samples_[index(i, j)];
    dst = s;
    dst.color = s.color.clamped();
}

GBufferSample sample_bilinear(const FrameBuffer &fb, TexCoord uv) {
    if (!uv.in_unit_square())
        throw Error(ErrorKind::InvalidInput, "sample_bilinear: coordinate outside [0,1]^2");

    const AxisTaps tx = axis_taps(uv.u, fb.width());
    const AxisTaps ty = axis_taps(uv.v, fb.height());

    GBufferSample out = fb.at(tx.nearest, ty.nearest);
    if (tx.frac == 0.0 && ty.frac == 0.0) {
        out.color = fb.at(tx.lo, ty.lo).color;
        return out;
    }

    const ColorRGB &c00 = fb.at(tx.lo, ty.lo).color;
    const ColorRGB &c10 = fb.at(tx.hi, ty.lo).color;
    const ColorRGB &c01 = fb.at(tx.lo, ty.hi).color;
    const ColorRGB &c11 = fb.at(tx.hi, ty.hi).color;
    const double fx = tx.frac;
    const double fy = ty.frac;
    auto mix = [&](double a00, double a10, double a01, double a11) {
        const double top = a00 + (a10 - a00) * fx;
        const double bottom = a01 + (a11 - a01) * fx;
        return top + (bottom - top) * fy;
    };
    out.color = ColorRGB::clamped(mix(c00.r, c10.r, c01.r, c11.r), mix(c00.g, c10.g, c01.g, c11.g),
                                  mix(c00.b, c10.b, c01.b, c11.b));
    return out;
}

ColorImage::ColorImage(int width, int height, ColorRGB fill) : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw Error(ErrorKind::InvalidDimensions, "image dimensions must be positive");
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill.clamped());
}

ColorImage color_channel(const FrameBuffer &fb) {
    ColorImage img(fb.width(), fb.height());
    for (int j = 0; j < fb.height(); ++j)
        for (int i = 0; i < fb.width(); ++i)
            img.store(i, j, fb.at(i, j).color);
    return img;
}

double srgb_encode(double linear) {
    const double x = clamp01(linear);
    return x <= 0.0031308 ? 12.92 * x : 1.055 * std::pow(x, 1.0 / 2.4) - 0.055;
}

double srgb_decode(double encoded) {
    const double x = clamp01(encoded);
    return x <= 0.04045 ? x / 12.92 : std::pow((x + 0.055) / 1.055, 2.4);
}

double srgb_code_to_linear(std::uint8_t code) { return srgb_decode(code / 255.0); }

std::uint8_t linear_to_srgb_code(double linear) {
    return static_cast<std::uint8_t>(std::lround(srgb_encode(linear) * 255.0));
}

double mean_abs_color_difference(const FrameBuffer &a, const FrameBuffer &b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw Error(ErrorKind::InvalidInput, "mean_abs_color_difference: size mismatch");
    double sum = 0.0;
    const auto &sa = a.samples();
    const auto &sb = b.samples();
    for (std::size_t k = 0; k < sa.size(); ++k) {
        sum += std::abs(sa[k].color.r - sb[k].color.r);
        sum += std::abs(sa[k].color.g - sb[k].color.g);
        sum += std::abs(sa[k].color.b - sb[k].color.b);
    }
    return sum / (3.0 * static_cast<double>(sa.size()));
}

} // namespace rcp

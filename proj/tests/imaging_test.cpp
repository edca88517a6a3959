// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rcp/error.h"
#include "rcp/imaging.h"
#include "test_util.h"

using namespace rcp;

TEST(FrameBuffer, RejectsEmptyDimensions) {
    EXPECT_THROW(FrameBuffer(0, 4), Error);
    EXPECT_THROW(FrameBuffer(4, -1), Error);
    try {
        FrameBuffer fb(0, 0);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidDimensions);
    }
}

TEST(FrameBuffer, StoreClampsColor) {
    FrameBuffer fb(2, 2);
    GBufferSample s;
    s.color = {1.7, -0.2, 0.25};
    fb.store(1, 1, s);
    EXPECT_EQ(fb.at(1, 1).color, (ColorRGB{1.0, 0.0, 0.25}));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> wide(-5.0, 5.0);
    for (int k = 0; k < 1000; ++k) {
        s.color = {wide(rng), wide(rng), wide(rng)};
        fb.store(0, 0, s);
        const ColorRGB c = fb.at(0, 0).color;
        for (double ch : {c.r, c.g, c.b}) {
            EXPECT_GE(ch, 0.0);
            EXPECT_LE(ch, 1.0);
        }
    }
}

TEST(SampleBilinear, UniformBufferReturnsFill) {
    GBufferSample s;
    s.color = {0.2, 0.4, 0.9};
    s.depth = 3.5;
    s.normal = {0, 1, 0};
    s.object_id = 7;
    s.position = {1, 2, 3};
    const FrameBuffer fb(9, 5, s);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 200; ++k)
        EXPECT_EQ(sample_bilinear(fb, {unit(rng), unit(rng)}), s);
    EXPECT_EQ(sample_bilinear(fb, {0.0, 0.0}), s);
    EXPECT_EQ(sample_bilinear(fb, {1.0, 1.0}), s);
}

TEST(SampleBilinear, ExactAtPixelCenters) {
    std::mt19937_64 rng(11);
    // Odd sizes, so (i + 0.5) / size is not exactly representable.
    for (auto [w, h] : {std::pair{13, 11}, std::pair{7, 3}, std::pair{100, 37}}) {
        const FrameBuffer fb = testutil::random_buffer(rng, w, h);
        for (int j = 0; j < h; ++j)
            for (int i = 0; i < w; ++i)
                ASSERT_EQ(sample_bilinear(fb, pixel_center(i, j, w, h)), fb.at(i, j)) << i << "," << j;
    }
    const FrameBuffer fb = testutil::random_buffer(rng, 16, 16);
    EXPECT_EQ(sample_bilinear(fb, pixel_center(3, 7, 16, 16)), fb.at(3, 7));
}

TEST(SampleBilinear, LinearMidpoint) {
    FrameBuffer fb(2, 1);
    GBufferSample white;
    white.color = {1, 1, 1};
    white.object_id = 2;
    fb.store(1, 0, white);
    const GBufferSample mid = sample_bilinear(fb, {0.5, 0.5});
    EXPECT_EQ(mid.color, (ColorRGB{0.5, 0.5, 0.5}));
    // Exact tie between the two centers resolves to the lower index.
    EXPECT_EQ(mid.object_id, 0u);
}

TEST(SampleBilinear, AuxChannelsAreNearestNeighbor) {
    FrameBuffer fb(4, 1);
    for (int i = 0; i < 4; ++i) {
        GBufferSample s;
        s.object_id = static_cast<std::uint32_t>(i + 1);
        s.depth = i;
        fb.store(i, 0, s);
    }
    // Center of pixel 1 is u = 0.375; 0.45 is nearer to pixel 1 than pixel 2.
    EXPECT_EQ(sample_bilinear(fb, {0.45, 0.5}).object_id, 2u);
    EXPECT_EQ(sample_bilinear(fb, {0.55, 0.5}).object_id, 3u);
    EXPECT_EQ(sample_bilinear(fb, {0.0, 0.5}).depth, 0.0);
    EXPECT_EQ(sample_bilinear(fb, {1.0, 0.5}).depth, 3.0);
}

TEST(SampleBilinear, BoundedByNeighbors) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int w = 17, h = 9;
    const FrameBuffer fb = testutil::random_buffer(rng, w, h);
    for (int k = 0; k < 5000; ++k) {
        const TexCoord uv{unit(rng), unit(rng)};
        const ColorRGB c = sample_bilinear(fb, uv).color;
        const double x = std::clamp(uv.u * w - 0.5, 0.0, w - 1.0);
        const double y = std::clamp(uv.v * h - 0.5, 0.0, h - 1.0);
        const int i0 = static_cast<int>(x), j0 = static_cast<int>(y);
        const int i1 = std::min(i0 + 1, w - 1), j1 = std::min(j0 + 1, h - 1);
        auto check = [&](auto channel) {
            const double vals[] = {channel(fb.at(i0, j0).color), channel(fb.at(i1, j0).color),
                                   channel(fb.at(i0, j1).color), channel(fb.at(i1, j1).color)};
            const double lo = *std::min_element(std::begin(vals), std::end(vals));
            const double hi = *std::max_element(std::begin(vals), std::end(vals));
            EXPECT_GE(channel(c), lo - 1e-15);
            EXPECT_LE(channel(c), hi + 1e-15);
        };
        check([](const ColorRGB &col) { return col.r; });
        check([](const ColorRGB &col) { return col.g; });
        check([](const ColorRGB &col) { return col.b; });
    }
}

TEST(SampleBilinear, RejectsOutOfRangeCoordinates) {
    const FrameBuffer fb(4, 4);
    EXPECT_THROW(sample_bilinear(fb, {-0.01, 0.5}), Error);
    EXPECT_THROW(sample_bilinear(fb, {0.5, 1.01}), Error);
    EXPECT_THROW(sample_bilinear(fb, {std::nan(""), 0.5}), Error);
}

TEST(Srgb, EightBitCodesRoundTrip) {
    for (int code = 0; code < 256; ++code)
        EXPECT_EQ(linear_to_srgb_code(srgb_code_to_linear(static_cast<std::uint8_t>(code))), code);
    EXPECT_EQ(linear_to_srgb_code(0.0), 0);
    EXPECT_EQ(linear_to_srgb_code(1.0), 255);
    EXPECT_EQ(linear_to_srgb_code(2.0), 255);
}

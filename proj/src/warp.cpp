// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/warp.h"

#include <algorithm>
#include <cmath>

#include "rcp/error.h"
#include "rcp/parallel.h"

namespace rcp::warp {

void validate(const WarpParams &params) {
    if (!(params.max_smudge_px >= 0.0) || !std::isfinite(params.max_smudge_px))
        throw Error(ErrorKind::InvalidInput, "max smudge distance must be finite and non-negative");
    if (params.iterations < 1)
        throw Error(ErrorKind::InvalidInput, "warp iterations must be at least 1");
    if (params.use_depth && !(params.depth_clamp > params.z0))
        throw Error(ErrorKind::InvalidInput, "depth_clamp must exceed z0");
}

double boundary_resolve(double x, EdgeMode mode) {
    switch (mode) {
    case EdgeMode::Clamp:
        return std::min(1.0, std::max(0.0, x));
    case EdgeMode::Wrap: {
        const double w = x - std::floor(x);
        // A tiny negative x can round up to exactly 1.
        return w >= 1.0 ? 0.0 : w;
    }
    case EdgeMode::Mirror: {
        const double p = x - 2.0 * std::floor(x / 2.0);
        const double m = p <= 1.0 ? p : 2.0 - p;
        return std::min(1.0, std::max(0.0, m));
    }
    }
    return 0.0;
}

Vec2 warp_delta(const GBufferSample &sample, const WarpParams &params, int width, int height) {
    double scale = params.max_smudge_px;
    if (params.use_depth)
        scale *= std::abs(std::min(sample.depth, params.depth_clamp) - params.z0);
    const double du = 2.0 * sample.color.r - 1.0;
    const double dv = -(2.0 * sample.color.g - 1.0);
    return {du * scale / width, dv * scale / height};
}

FrameBuffer warp_pass(const FrameBuffer &input, const WarpParams &params, const FetchObserver &observer) {
    validate(params);
    const int width = input.width();
    const int height = input.height();
    FrameBuffer out(width, height);
    parallel_rows(height, [&](int j) {
        for (int i = 0; i < width; ++i) {
            const TexCoord uv = pixel_center(i, j, width, height);
            const Vec2 d = warp_delta(input.at(i, j), params, width, height);
            const TexCoord fetch{boundary_resolve(uv.u + d.x, params.edge_mode),
                                 boundary_resolve(uv.v + d.y, params.edge_mode)};
            if (observer)
                observer(fetch);
            out.store(i, j, sample_bilinear(input, fetch));
        }
    });
    return out;
}

std::vector<FrameBuffer> warp_recursive(const FrameBuffer &input, const WarpParams &params) {
    validate(params);
    std::vector<FrameBuffer> buffers;
    buffers.reserve(static_cast<std::size_t>(params.iterations) + 1);
    buffers.push_back(input);
    for (int n = 1; n <= params.iterations; ++n)
        buffers.push_back(warp_pass(buffers.back(), params));
    return buffers;
}

} // namespace rcp::warp

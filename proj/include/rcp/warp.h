// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "rcp/imaging.h"
#include "rcp/math.h"

namespace rcp::warp {

enum class EdgeMode { Clamp, Wrap, Mirror };

struct WarpParams {
    double max_smudge_px = 0.0;
    EdgeMode edge_mode = EdgeMode::Mirror;
    bool use_depth = false;
    double z0 = 5.0;
    double depth_clamp = 100.0;
    int iterations = 6;
};

/// Throws Error(InvalidInput) on negative smudge distance, iterations < 1, or
/// depth_clamp <= z0 with use_depth set.
void validate(const WarpParams &params);

/// Folds any finite coordinate back into [0,1].
double boundary_resolve(double x, EdgeMode mode);

/// Offset in texture units, driven by the sample's red and green channels.
/// Mid-gray is motionless; green = 1 moves content up the screen.
Vec2 warp_delta(const GBufferSample &sample, const WarpParams &params, int width, int height);

/// Receives every coordinate a warp pass fetches from. Called concurrently.
using FetchObserver = std::function<void(TexCoord)>;

FrameBuffer warp_pass(const FrameBuffer &input, const WarpParams &params, const FetchObserver &observer = {});

/// [input, J_1, ..., J_iterations].
std::vector<FrameBuffer> warp_recursive(const FrameBuffer &input, const WarpParams &params);

} // namespace rcp::warp

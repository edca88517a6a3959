// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "rcp/displacement.h"
#include "rcp/imaging.h"
#include "rcp/scene.h"

namespace rcp {

enum class TemporalMode {
    Restart, // every displayed frame starts again from the gray seed
    Carry,   // a frame starts from the previous frame's final buffer
};

struct RecursionConfig {
    int iterations = 6;
    int samples_per_pixel = 1;
    std::uint64_t rng_seed = 0;
    displacement::Mapping pixel_mapping = displacement::AffineColor::canonical(0.3);
    displacement::Mapping eye_mapping = displacement::Null{};
    TemporalMode temporal_mode = TemporalMode::Restart;
};

/// Throws Error(InvalidInput) when iterations or samples_per_pixel < 1 or a
/// mapping is invalid.
void validate(const RecursionConfig &cfg);

/// Sub-pixel offset in [0,1)^2 for one sample. Sample 0 is the pixel center;
/// the rest come from a stateless hash of the full key.
Vec2 jitter_offset(std::uint64_t rng_seed, int pass_index, int i, int j, int sample_index);

/// The gray starting buffer. Its auxiliary channels are chosen so that every
/// built-in mapping evaluates to zero on it: depth = z0 for a depth mapping
/// (0 otherwise), normal = camera forward, object id 0.
FrameBuffer seed_buffer(int width, int height, const displacement::Mapping &mapping, const Camera &camera);

/// Per-pixel camera: both the eye and the film point are displaced by their
/// mappings. Falls back to the undisplaced pinhole ray when they coincide.
Ray reassign_ray(const Camera &camera, TexCoord uv, const GBufferSample &prev,
                 const displacement::Mapping &pixel_mapping, const displacement::Mapping &eye_mapping);

/// One application of the recursion: I_n from I_{n-1}, at prev's size. Throws
/// Error(InvalidInput) when the camera's film aspect does not match that size.
FrameBuffer render_pass(const Scene &scene, const Camera &camera, const FrameBuffer &prev, const RecursionConfig &cfg,
                        int pass_index);

/// [initial, I_1, ..., I_iterations] with all passes using the same camera.
std::vector<FrameBuffer> render_iterations(const Scene &scene, const Camera &camera, const FrameBuffer &initial,
                                           const RecursionConfig &cfg);

/// [I_0 (seed), I_1, ..., I_iterations].
std::vector<FrameBuffer> render_recursive(const Scene &scene, const Camera &camera, const RecursionConfig &cfg,
                                          int width, int height);

struct FrameRange {
    int first = 0;
    int last = 0; // inclusive
};

/// Final-iteration buffer for each frame of the range, following the scene's
/// camera path. Throws Error(InvalidScene) when the path is empty.
std::vector<FrameBuffer> render_walkthrough(const Scene &scene, const RecursionConfig &cfg, FrameRange frames,
                                            int width, int height);

} // namespace rcp

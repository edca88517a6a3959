// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <variant>

#include "rcp/imaging.h"
#include "rcp/math.h"
#include "rcp/scene.h"

namespace rcp::displacement {

/// Affine map of the previous color: M * (r, g, b) + bias, in camera-local axes.
struct AffineColor {
    Mat3 matrix;
    Vec3 bias;

    /// lambda * (2c - 1): mid-gray is motionless, saturated channels move by lambda.
    static AffineColor canonical(double lambda) {
        return {Mat3::scaled_identity(2.0 * lambda), Vec3{-lambda, -lambda, -lambda}};
    }
    bool operator==(const AffineColor &) const = default;
};

/// Canonical color map scaled by |depth - z0|; depth is clamped to depth_clamp first.
struct DepthFocus {
    double lambda = 0.3;
    double z0 = 5.0;
    double depth_clamp = 100.0;
    bool operator==(const DepthFocus &) const = default;
};

/// lambda * (forward x normal), a vector tangent to the surface, plus optional hash noise.
struct NormalTangent {
    double lambda = 0.3;
    int loops = 1;
    double noise_amplitude = 0.0;
    std::uint64_t noise_seed = 0;
    bool operator==(const NormalTangent &) const = default;
};

struct Null {
    bool operator==(const Null &) const = default;
};

using Mapping = std::variant<AffineColor, DepthFocus, NormalTangent, Null>;

/// Throws Error(InvalidInput) on lambda <= 0, loops < 1, negative noise or
/// depth_clamp <= z0.
void validate(const Mapping &mapping);

Vec3 eval_color_affine(const Mat3 &matrix, const Vec3 &bias, const ColorRGB &color);

Vec3 eval_depth_focus(double lambda, double z0, double depth_clamp, const GBufferSample &sample);

/// Deterministic per-coordinate hash into [-1,1]^3.
Vec3 hash3(TexCoord uv, std::uint64_t seed);

/// World-space tangent displacement. Noise is only added on surface samples
/// (object_id != 0) so environment and seed samples stay motionless.
Vec3 eval_normal_tangent(double lambda, double noise_amplitude, std::uint64_t noise_seed, const Vec3 &camera_forward,
                         const GBufferSample &sample, TexCoord uv);

/// World-space displacement for one (u,v) from the previous pass's sample.
Vec3 eval(const Mapping &mapping, const GBufferSample &sample, const Camera &camera, TexCoord uv);

/// Number of reassign/trace rounds a pass performs for this mapping.
int loops(const Mapping &mapping);

} // namespace rcp::displacement

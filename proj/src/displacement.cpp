// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/displacement.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "rcp/error.h"

namespace rcp::displacement {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double to_signed_unit(std::uint64_t bits) {
    // 53 high bits -> [0,1], then to [-1,1].
    const double unit = static_cast<double>(bits >> 11) * (1.0 / 9007199254740991.0);
    return 2.0 * unit - 1.0;
}

Vec3 centered(const ColorRGB &c) { return {2.0 * c.r - 1.0, 2.0 * c.g - 1.0, 2.0 * c.b - 1.0}; }

} // namespace

void validate(const Mapping &mapping) {
    std::visit(
        [](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DepthFocus>) {
                if (!(m.lambda > 0.0))
                    throw Error(ErrorKind::InvalidInput, "depth mapping: lambda must be positive");
                if (!(m.z0 >= 0.0))
                    throw Error(ErrorKind::InvalidInput, "depth mapping: z0 must be non-negative");
                if (!(m.depth_clamp > m.z0))
                    throw Error(ErrorKind::InvalidInput, "depth mapping: depth_clamp must exceed z0");
            } else if constexpr (std::is_same_v<T, NormalTangent>) {
                if (!(m.lambda > 0.0))
                    throw Error(ErrorKind::InvalidInput, "normal mapping: lambda must be positive");
                if (m.loops < 1)
                    throw Error(ErrorKind::InvalidInput, "normal mapping: loops must be at least 1");
                if (!(m.noise_amplitude >= 0.0))
                    throw Error(ErrorKind::InvalidInput, "normal mapping: noise amplitude must be non-negative");
            } else if constexpr (std::is_same_v<T, AffineColor>) {
                for (double v : m.matrix.m)
                    if (!std::isfinite(v))
                        throw Error(ErrorKind::InvalidInput, "color mapping: matrix must be finite");
                if (!std::isfinite(m.bias.x) || !std::isfinite(m.bias.y) || !std::isfinite(m.bias.z))
                    throw Error(ErrorKind::InvalidInput, "color mapping: bias must be finite");
            }
        },
        mapping);
}

Vec3 eval_color_affine(const Mat3 &matrix, const Vec3 &bias, const ColorRGB &color) {
    return matrix * Vec3{color.r, color.g, color.b} + bias;
}

Vec3 eval_depth_focus(double lambda, double z0, double depth_clamp, const GBufferSample &sample) {
    const double z = std::min(sample.depth, depth_clamp);
    return centered(sample.color) * (lambda * std::abs(z - z0));
}

Vec3 hash3(TexCoord uv, std::uint64_t seed) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(uv.u));
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(uv.v));
    const std::uint64_t a = splitmix64(h ^ 1);
    const std::uint64_t b = splitmix64(h ^ 2);
    const std::uint64_t c = splitmix64(h ^ 3);
    return {to_signed_unit(a), to_signed_unit(b), to_signed_unit(c)};
}

Vec3 eval_normal_tangent(double lambda, double noise_amplitude, std::uint64_t noise_seed, const Vec3 &camera_forward,
                         const GBufferSample &sample, TexCoord uv) {
    Vec3 v = cross(camera_forward, sample.normal) * lambda;
    if (noise_amplitude > 0.0 && sample.object_id != 0)
        v += hash3(uv, noise_seed) * noise_amplitude;
    return v;
}

Vec3 eval(const Mapping &mapping, const GBufferSample &sample, const Camera &camera, TexCoord uv) {
    return std::visit(
        [&](const auto &m) -> Vec3 {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AffineColor>) {
                return local_to_world(camera, eval_color_affine(m.matrix, m.bias, sample.color));
            } else if constexpr (std::is_same_v<T, DepthFocus>) {
                return local_to_world(camera, eval_depth_focus(m.lambda, m.z0, m.depth_clamp, sample));
            } else if constexpr (std::is_same_v<T, NormalTangent>) {
                return eval_normal_tangent(m.lambda, m.noise_amplitude, m.noise_seed, camera.forward, sample, uv);
            } else {
                return Vec3{};
            }
        },
        mapping);
}

int loops(const Mapping &mapping) {
    if (const auto *n = std::get_if<NormalTangent>(&mapping))
        return n->loops;
    return 1;
}

} // namespace rcp::displacement

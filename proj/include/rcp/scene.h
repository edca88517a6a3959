// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "rcp/imaging.h"
#include "rcp/math.h"

namespace rcp {

/// Pinhole camera with an explicit film plane. The basis is left-handed in the
/// usual image sense: right x up = forward.
struct Camera {
    Vec3 eye;
    Vec3 right{1.0, 0.0, 0.0};
    Vec3 up{0.0, 1.0, 0.0};
    Vec3 forward{0.0, 0.0, 1.0};
    double film_distance = 1.0;
    double film_half_width = 1.0;
    double film_half_height = 1.0;

    /// Camera looking from eye toward look, with a vertical field of view in
    /// degrees and film extents placed at film_distance = 1.
    static Camera look_at(const Vec3 &eye, const Vec3 &look, const Vec3 &up_hint, double fov_y_deg,
                          double aspect);

    bool operator==(const Camera &) const = default;
};

struct Ray {
    Vec3 origin;
    Vec3 direction{0.0, 0.0, 1.0};
};

struct Material {
    ColorRGB albedo{0.8, 0.8, 0.8};
    /// Optional equirectangular texture addressed by the surface normal.
    std::shared_ptr<const ColorImage> texture;

    bool operator==(const Material &o) const {
        return albedo == o.albedo && (texture == o.texture || (texture && o.texture && *texture == *o.texture));
    }
};

struct Sphere {
    Vec3 center;
    double radius = 1.0;
    Material material;
    bool operator==(const Sphere &) const = default;
};

struct Aabb {
    Vec3 lo;
    Vec3 hi;
    bool operator==(const Aabb &) const = default;
};

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    Material material;
    Aabb bounds; // filled by compute_bounds()

    void compute_bounds();
    bool operator==(const TriangleMesh &) const = default;
};

using Primitive = std::variant<Sphere, TriangleMesh>;

struct DirectionalLight {
    Vec3 direction{0.0, -1.0, 0.0}; // direction the light travels
    double intensity = 1.0;
    bool operator==(const DirectionalLight &) const = default;
};

struct CameraKey {
    int frame = 0;
    Vec3 eye;
    Vec3 look{0.0, 0.0, 1.0};
    Vec3 up{0.0, 1.0, 0.0};
    double fov_y_deg = 60.0;
    bool operator==(const CameraKey &) const = default;
};

/// Scene contents at one time step. Primitive i carries object id i + 1.
struct Scene {
    ColorImage environment{1, 1, ColorRGB{0.0, 0.0, 0.0}};
    std::vector<Primitive> primitives;
    DirectionalLight light;
    double ambient = 0.1;
    std::vector<CameraKey> camera_path;
};

/// Throws Error(InvalidScene) on a non-positive radius, degenerate triangle,
/// out-of-range index, non-unit light or ambient outside [0,1].
void validate(const Scene &scene);

/// Point on the film for image coordinate uv (v grows downward).
Vec3 film_point(const Camera &camera, TexCoord uv);

Vec3 local_to_world(const Camera &camera, const Vec3 &v_local);

/// Equirectangular lookup, wrapping horizontally and clamping vertically.
ColorRGB equirect_lookup(const Vec3 &direction, const ColorImage &environment);

/// Nearest hit along the ray, or an environment sample on a miss.
GBufferSample trace(const Scene &scene, const Ray &ray);

/// Camera on the scene's path at a frame: eye is interpolated linearly, the
/// basis spherically, between the bracketing keyframes. Throws
/// Error(InvalidScene) when the path is empty.
Camera camera_at(const Scene &scene, int frame, int width, int height);

/// Smooth colorful test pattern suitable as an environment texture. Values are
/// quantized to 8 bits so that a PNG round trip is lossless.
ColorImage procedural_environment(int width, int height);

} // namespace rcp

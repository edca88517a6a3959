// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rcp/scene.h"

namespace rcp::scenefile {

// Line-oriented scene text, one statement per line, '#' starts a comment:
//
//   env <image-path>
//   env_color r g b
//   sphere cx cy cz r [albedo r g b | tex <path>]
//   mesh <obj-path> [albedo r g b]
//   light dx dy dz intensity
//   ambient a
//   camera frame=<n> eye=<x,y,z> look=<x,y,z> up=<x,y,z> fov=<deg>
//
// Paths are relative to the scene file's directory.

struct SphereDesc {
    Vec3 center;
    double radius = 1.0;
    std::optional<ColorRGB> albedo;
    std::optional<std::string> texture;
    bool operator==(const SphereDesc &) const = default;
};

struct MeshDesc {
    std::string path;
    std::optional<ColorRGB> albedo;
    bool operator==(const MeshDesc &) const = default;
};

using PrimitiveDesc = std::variant<SphereDesc, MeshDesc>;

/// Scene as written in the file, before any referenced resource is loaded.
struct SceneDescription {
    std::optional<std::string> env_path;
    std::optional<ColorRGB> env_color;
    std::vector<PrimitiveDesc> primitives;
    std::optional<DirectionalLight> light; // direction as written, not normalized
    std::optional<double> ambient;
    std::vector<CameraKey> cameras;
    bool operator==(const SceneDescription &) const = default;
};

/// Throws Error(Parse) with "<source>:<line>: <message>".
SceneDescription parse_scene(std::string_view text, const std::string &source = "<scene>");

std::string write_scene(const SceneDescription &desc);

/// Resolves paths against base_dir and loads images and meshes. Throws
/// Error(Io) for unreadable resources and Error(InvalidScene) for invalid content.
Scene load_scene(const SceneDescription &desc, const std::filesystem::path &base_dir);

/// Reads, parses and loads a scene file.
Scene read_scene_file(const std::filesystem::path &path);

/// Wavefront OBJ: 'v' and 'f' records; polygons are fan-triangulated.
TriangleMesh read_obj(const std::filesystem::path &path);

/// Environment texture, three spheres and one keyframe.
SceneDescription example_scene_description();

/// Writes example.scn and its environment texture into dir; returns the scene path.
std::filesystem::path write_example_scene(const std::filesystem::path &dir);

} // namespace rcp::scenefile

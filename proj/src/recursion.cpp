// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/recursion.h"

#include <cmath>
#include <string>

#include "rcp/error.h"
#include "rcp/parallel.h"

namespace rcp {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_from_bits(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

Ray pinhole_ray(const Camera &camera, TexCoord uv) {
    return {camera.eye, normalize(film_point(camera, uv) - camera.eye)};
}

double seed_depth(const displacement::Mapping &mapping) {
    if (const auto *d = std::get_if<displacement::DepthFocus>(&mapping))
        return d->z0;
    return 0.0;
}

} // namespace

void validate(const RecursionConfig &cfg) {
    if (cfg.iterations < 1)
        throw Error(ErrorKind::InvalidInput, "iterations must be at least 1");
    if (cfg.samples_per_pixel < 1)
        throw Error(ErrorKind::InvalidInput, "samples per pixel must be at least 1");
    displacement::validate(cfg.pixel_mapping);
    displacement::validate(cfg.eye_mapping);
}

Vec2 jitter_offset(std::uint64_t rng_seed, int pass_index, int i, int j, int sample_index) {
    if (sample_index == 0)
        return {0.5, 0.5};
    std::uint64_t h = mix64(rng_seed);
    h = mix64(h ^ static_cast<std::uint32_t>(pass_index));
    h = mix64(h ^ static_cast<std::uint32_t>(i));
    h = mix64(h ^ static_cast<std::uint32_t>(j));
    h = mix64(h ^ static_cast<std::uint32_t>(sample_index));
    return {unit_from_bits(h), unit_from_bits(mix64(h))};
}

FrameBuffer seed_buffer(int width, int height, const displacement::Mapping &mapping, const Camera &camera) {
    GBufferSample s;
    s.color = {0.5, 0.5, 0.5};
    s.depth = seed_depth(mapping);
    s.normal = camera.forward;
    s.object_id = 0;
    s.position = {};
    return FrameBuffer(width, height, s);
}

Ray reassign_ray(const Camera &camera, TexCoord uv, const GBufferSample &prev,
                 const displacement::Mapping &pixel_mapping, const displacement::Mapping &eye_mapping) {
    if (!uv.in_unit_square())
        throw Error(ErrorKind::InvalidInput, "reassign_ray: coordinate outside [0,1]^2");
    const Vec3 eye = camera.eye + displacement::eval(eye_mapping, prev, camera, uv);
    const Vec3 target = film_point(camera, uv) + displacement::eval(pixel_mapping, prev, camera, uv);
    const Vec3 dir = target - eye;
    const double len = length(dir);
    if (!(len >= 1e-9))
        return pinhole_ray(camera, uv);
    return {eye, dir / len};
}

FrameBuffer render_pass(const Scene &scene, const Camera &camera, const FrameBuffer &prev, const RecursionConfig &cfg,
                        int pass_index) {
    validate(cfg);
    const int width = prev.width();
    const int height = prev.height();
    const double aspect = static_cast<double>(width) / height;
    if (std::abs(camera.film_half_width / camera.film_half_height - aspect) > 1e-6)
        throw Error(ErrorKind::InvalidInput, "render_pass: camera film aspect does not match the " +
                                                 std::to_string(width) + "x" + std::to_string(height) + " buffer");
    FrameBuffer out(width, height);
    const int spp = cfg.samples_per_pixel;
    const int rounds = displacement::loops(cfg.pixel_mapping);

    parallel_rows(height, [&](int j) {
        for (int i = 0; i < width; ++i) {
            GBufferSample first;
            double r = 0.0, g = 0.0, b = 0.0;
            for (int s = 0; s < spp; ++s) {
                const Vec2 xi = jitter_offset(cfg.rng_seed, pass_index, i, j, s);
                const TexCoord uv{(i + xi.x) / width, (j + xi.y) / height};
                GBufferSample cur = sample_bilinear(prev, uv);
                for (int l = 0; l < rounds; ++l)
                    cur = trace(scene, reassign_ray(camera, uv, cur, cfg.pixel_mapping, cfg.eye_mapping));
                if (s == 0)
                    first = cur;
                r += cur.color.r;
                g += cur.color.g;
                b += cur.color.b;
            }
            first.color = {r / spp, g / spp, b / spp};
            out.store(i, j, first);
        }
    });
    return out;
}

std::vector<FrameBuffer> render_iterations(const Scene &scene, const Camera &camera, const FrameBuffer &initial,
                                           const RecursionConfig &cfg) {
    validate(cfg);
    std::vector<FrameBuffer> buffers;
    buffers.reserve(static_cast<std::size_t>(cfg.iterations) + 1);
    buffers.push_back(initial);
    for (int n = 1; n <= cfg.iterations; ++n)
        buffers.push_back(render_pass(scene, camera, buffers.back(), cfg, n));
    return buffers;
}

std::vector<FrameBuffer> render_recursive(const Scene &scene, const Camera &camera, const RecursionConfig &cfg,
                                          int width, int height) {
    return render_iterations(scene, camera, seed_buffer(width, height, cfg.pixel_mapping, camera), cfg);
}

std::vector<FrameBuffer> render_walkthrough(const Scene &scene, const RecursionConfig &cfg, FrameRange frames,
                                            int width, int height) {
    if (scene.camera_path.empty())
        throw Error(ErrorKind::InvalidScene, "scene has no camera keyframes");
    if (frames.last < frames.first)
        throw Error(ErrorKind::InvalidInput, "frame range is empty");
    std::vector<FrameBuffer> finals;
    for (int f = frames.first; f <= frames.last; ++f) {
        const Camera camera = camera_at(scene, f, width, height);
        const bool carry = cfg.temporal_mode == TemporalMode::Carry && !finals.empty();
        FrameBuffer initial = carry ? finals.back() : seed_buffer(width, height, cfg.pixel_mapping, camera);
        finals.push_back(std::move(render_iterations(scene, camera, initial, cfg).back()));
    }
    return finals;
}

} // namespace rcp

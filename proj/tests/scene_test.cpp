// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rcp/error.h"
#include "rcp/scene.h"
#include "test_util.h"

using namespace rcp;

namespace {

void expect_near(const Vec3 &a, const Vec3 &b, double tol) {
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

Camera tilted_camera() {
    return Camera::look_at({1, 2, -3}, {0.3, 1.5, 4}, {0.1, 1, 0}, 50.0, 16.0 / 9.0);
}

} // namespace

TEST(Camera, LookAtIsOrthonormalWithMatchingAspect) {
    const Camera c = tilted_camera();
    EXPECT_NEAR(length(c.right), 1.0, 1e-12);
    EXPECT_NEAR(length(c.up), 1.0, 1e-12);
    EXPECT_NEAR(length(c.forward), 1.0, 1e-12);
    EXPECT_NEAR(dot(c.right, c.up), 0.0, 1e-12);
    EXPECT_NEAR(dot(c.right, c.forward), 0.0, 1e-12);
    EXPECT_NEAR(dot(c.up, c.forward), 0.0, 1e-12);
    EXPECT_NEAR(c.film_half_width / c.film_half_height, 16.0 / 9.0, 1e-12);
    EXPECT_NEAR(c.film_half_height, std::tan(25.0 * kPi / 180.0), 1e-12);

    const Camera id = Camera::look_at({0, 0, 0}, {0, 0, 1}, {0, 1, 0}, 90.0, 1.0);
    expect_near(id.right, {1, 0, 0}, 1e-15);
    expect_near(id.up, {0, 1, 0}, 1e-15);
    expect_near(id.forward, {0, 0, 1}, 1e-15);
}

TEST(Camera, LookAtRejectsDegenerateInput) {
    EXPECT_THROW(Camera::look_at({0, 0, 0}, {0, 0, 0}, {0, 1, 0}, 60, 1), Error);
    EXPECT_THROW(Camera::look_at({0, 0, 0}, {0, 1, 0}, {0, 1, 0}, 60, 1), Error);
    EXPECT_THROW(Camera::look_at({0, 0, 0}, {0, 0, 1}, {0, 1, 0}, 180, 1), Error);
}

TEST(FilmPoint, CenterAndEdges) {
    const Camera c = tilted_camera();
    const Vec3 center = c.eye + c.forward * c.film_distance;
    expect_near(film_point(c, {0.5, 0.5}), center, 1e-14);
    expect_near(film_point(c, {1.0, 0.5}), center + c.right * c.film_half_width, 1e-14);
    expect_near(film_point(c, {0.5, 0.0}), center + c.up * c.film_half_height, 1e-14);
}

TEST(FilmPoint, AffineInTexCoord) {
    const Camera c = tilted_camera();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const TexCoord a{unit(rng), unit(rng)}, b{unit(rng), unit(rng)};
        const TexCoord mid{0.5 * (a.u + b.u), 0.5 * (a.v + b.v)};
        const Vec3 r = film_point(c, a) + film_point(c, b) - film_point(c, mid) * 2.0;
        EXPECT_LT(length(r), 1e-9);
    }
}

TEST(LocalToWorld, Examples) {
    const Camera id;
    EXPECT_EQ(local_to_world(tilted_camera(), {0, 0, 0}), (Vec3{0, 0, 0}));
    EXPECT_EQ(local_to_world(id, {1, 0, 0}), (Vec3{1, 0, 0}));
    Camera c;
    c.up = {0, 0, 1};
    c.forward = {0, -1, 0};
    EXPECT_EQ(local_to_world(c, {0, 2, 0}), (Vec3{0, 0, 2}));
}

TEST(EquirectLookup, PolesAndForwardAxis) {
    // Linear ramps away from the horizontal seam so bilinear lookup is exact.
    const int w = 8, h = 4;
    ColorImage env(w, h);
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i)
            env.store(i, j, {i / 7.0, j / 3.0, 0.25});

    const ColorRGB fwd = equirect_lookup({0, 0, 1}, env); // (u,v) = (0.5,0.5) -> (x,y) = (3.5,1.5)
    EXPECT_NEAR(fwd.r, 0.5, 1e-12);
    EXPECT_NEAR(fwd.g, 0.5, 1e-12);

    EXPECT_NEAR(equirect_lookup({0, 1, 0}, env).g, 0.0, 1e-12);  // top row
    EXPECT_NEAR(equirect_lookup({0, -1, 0}, env).g, 1.0, 1e-12); // bottom row
}

TEST(EquirectLookup, WrapsHorizontally) {
    ColorImage env(4, 1);
    env.store(0, 0, {1, 0, 0});
    env.store(3, 0, {0, 0, 1});
    // d = (0,0,-1) gives u = 0 or 1, halfway between the last and first column.
    const ColorRGB seam = equirect_lookup({0, 0, -1}, env);
    EXPECT_NEAR(seam.r, 0.5, 1e-12);
    EXPECT_NEAR(seam.b, 0.5, 1e-12);
}

TEST(Trace, AnalyticSphereHit) {
    Scene s = testutil::constant_env_scene({0.5, 0.5, 0.5});
    s.primitives.emplace_back(Sphere{{0, 0, 5}, 1.0, {}});
    const GBufferSample hit = trace(s, {{0, 0, 0}, {0, 0, 1}});
    EXPECT_EQ(hit.depth, 4.0);
    EXPECT_EQ(hit.normal, (Vec3{0, 0, -1}));
    EXPECT_EQ(hit.object_id, 1u);
    EXPECT_EQ(hit.position, (Vec3{0, 0, 4}));
}

TEST(Trace, MissSamplesEnvironment) {
    Scene s;
    s.environment = procedural_environment(32, 16);
    const Vec3 d = normalize(Vec3{0.3, -0.2, 0.9});
    const GBufferSample miss = trace(s, {{1, 2, 3}, d});
    EXPECT_EQ(miss.object_id, 0u);
    EXPECT_EQ(miss.depth, std::numeric_limits<double>::infinity());
    EXPECT_EQ(miss.normal, -d);
    EXPECT_EQ(miss.color, equirect_lookup(d, s.environment));
}

TEST(Trace, NearestHitWins) {
    Scene s;
    s.primitives.emplace_back(Sphere{{0, 0, 8}, 1.0, {}}); // hit at t = 7
    s.primitives.emplace_back(Sphere{{0, 0, 4}, 1.0, {}}); // hit at t = 3
    const GBufferSample hit = trace(s, {{0, 0, 0}, {0, 0, 1}});
    EXPECT_EQ(hit.depth, 3.0);
    EXPECT_EQ(hit.object_id, 2u);
}

TEST(Trace, LambertShading) {
    Scene s;
    s.ambient = 0.1;
    s.light = {{0, 0, 1}, 1.0};
    s.primitives.emplace_back(Sphere{{0, 0, 5}, 1.0, Material{{0.5, 0.25, 1.0}, nullptr}});
    const GBufferSample hit = trace(s, {{0, 0, 0}, {0, 0, 1}});
    EXPECT_NEAR(hit.color.r, 0.55, 1e-15);
    EXPECT_NEAR(hit.color.g, 0.275, 1e-15);
    EXPECT_EQ(hit.color.b, 1.0); // clamped from 1.1
}

TEST(Trace, TriangleMeshHitAndBounds) {
    Scene s;
    TriangleMesh m;
    m.vertices = {{-1, -1, 3}, {1, -1, 3}, {0, 1, 3}};
    m.triangles = {{0, 1, 2}};
    m.compute_bounds();
    s.primitives.emplace_back(m);
    const GBufferSample hit = trace(s, {{0, 0, 0}, {0, 0, 1}});
    EXPECT_NEAR(hit.depth, 3.0, 1e-12);
    expect_near(hit.normal, {0, 0, -1}, 1e-12);
    EXPECT_EQ(hit.object_id, 1u);
    EXPECT_EQ(trace(s, {{0, 0, 0}, normalize(Vec3{1, 1, 0.1})}).object_id, 0u);
}

TEST(Trace, NearestHitPropertyAndDeterminism) {
    const Scene s = testutil::spheres_scene();
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const Ray ray{{0, 0, 0}, normalize(Vec3{0.3 * n(rng), 0.3 * n(rng), 1.0})};
        const GBufferSample a = trace(s, ray);
        EXPECT_EQ(a, trace(s, ray));
        for (const auto &prim : s.primitives) {
            Scene single = s;
            single.primitives = {prim};
            const GBufferSample b = trace(single, ray);
            if (b.object_id != 0)
                EXPECT_LE(a.depth, b.depth);
        }
        for (double ch : {a.color.r, a.color.g, a.color.b}) {
            EXPECT_GE(ch, 0.0);
            EXPECT_LE(ch, 1.0);
        }
    }
}

TEST(Scene, ValidateRejectsBadPrimitives) {
    Scene s;
    s.primitives.emplace_back(Sphere{{0, 0, 5}, 0.0, {}});
    EXPECT_THROW(validate(s), Error);

    Scene t;
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}};
    m.triangles = {{0, 1, 2}};
    t.primitives.emplace_back(m);
    EXPECT_THROW(validate(t), Error);

    EXPECT_NO_THROW(validate(testutil::spheres_scene()));
}

TEST(CameraPath, HoldsEndsAndInterpolatesBetween) {
    Scene s;
    EXPECT_THROW(camera_at(s, 0, 4, 4), Error);

    s.camera_path.push_back(CameraKey{0, {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, 60.0});
    s.camera_path.push_back(CameraKey{10, {2, 0, 0}, {3, 0, 0}, {0, 1, 0}, 60.0});
    const Camera first = camera_at(s, -5, 4, 4);
    expect_near(first.forward, {0, 0, 1}, 1e-12);
    const Camera last = camera_at(s, 12, 4, 4);
    expect_near(last.forward, {1, 0, 0}, 1e-12);

    const Camera mid = camera_at(s, 5, 4, 4);
    expect_near(mid.eye, {1, 0, 0}, 1e-12);
    expect_near(mid.forward, normalize(Vec3{1, 0, 1}), 1e-12);
    expect_near(mid.up, {0, 1, 0}, 1e-12);
    EXPECT_NEAR(dot(mid.right, mid.forward), 0.0, 1e-12);
    EXPECT_NEAR(length(mid.right), 1.0, 1e-12);
}

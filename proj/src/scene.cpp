// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/scene.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rcp/error.h"

namespace rcp {

namespace {

constexpr double kHitEpsilon = 1e-4;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Hit {
    double t = kInf;
    Vec3 normal; // outward geometric normal
    const Material *material = nullptr;
    std::uint32_t object_id = 0;
};

bool intersect_sphere(const Sphere &s, const Ray &ray, double &t_out, Vec3 &normal_out) {
    const Vec3 oc = ray.origin - s.center;
    const double b = dot(oc, ray.direction);
    const double c = dot(oc, oc) - s.radius * s.radius;
    const double disc = b * b - c;
    if (disc < 0.0)
        return false;
    const double root = std::sqrt(disc);
    double t = -b - root;
    if (t <= kHitEpsilon)
        t = -b + root;
    if (t <= kHitEpsilon)
        return false;
    t_out = t;
    normal_out = (ray.origin + ray.direction * t - s.center) / s.radius;
    return true;
}

bool intersect_aabb(const Aabb &box, const Ray &ray, double t_max) {
    double t0 = kHitEpsilon;
    double t1 = t_max;
    for (int a = 0; a < 3; ++a) {
        const double inv = 1.0 / ray.direction[a];
        double tn = (box.lo[a] - ray.origin[a]) * inv;
        double tf = (box.hi[a] - ray.origin[a]) * inv;
        if (tn > tf)
            std::swap(tn, tf);
        // NaN (0 * inf) on an axis-parallel ray leaves the interval untouched.
        t0 = tn > t0 ? tn : t0;
        t1 = tf < t1 ? tf : t1;
        if (t0 > t1)
            return false;
    }
    return true;
}

// Moller-Trumbore.
bool intersect_triangle(const Vec3 &p0, const Vec3 &p1, const Vec3 &p2, const Ray &ray, double &t_out) {
    const Vec3 e1 = p1 - p0;
    const Vec3 e2 = p2 - p0;
    const Vec3 pvec = cross(ray.direction, e2);
    const double det = dot(e1, pvec);
    if (std::abs(det) < 1e-14)
        return false;
    const double inv_det = 1.0 / det;
    const Vec3 tvec = ray.origin - p0;
    const double u = dot(tvec, pvec) * inv_det;
    if (u < 0.0 || u > 1.0)
        return false;
    const Vec3 qvec = cross(tvec, e1);
    const double v = dot(ray.direction, qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0)
        return false;
    const double t = dot(e2, qvec) * inv_det;
    if (t <= kHitEpsilon)
        return false;
    t_out = t;
    return true;
}

void intersect_mesh(const TriangleMesh &mesh, std::uint32_t id, const Ray &ray, Hit &best) {
    if (!intersect_aabb(mesh.bounds, ray, best.t))
        return;
    for (const auto &tri : mesh.triangles) {
        const Vec3 &p0 = mesh.vertices[tri[0]];
        const Vec3 &p1 = mesh.vertices[tri[1]];
        const Vec3 &p2 = mesh.vertices[tri[2]];
        double t;
        if (intersect_triangle(p0, p1, p2, ray, t) && t < best.t) {
            best.t = t;
            best.normal = normalize(cross(p1 - p0, p2 - p0));
            best.material = &mesh.material;
            best.object_id = id;
        }
    }
}

struct Quat {
    double w, x, y, z;
};

// Rotation whose matrix has columns right, up, forward.
Quat basis_to_quat(const Camera &c) {
    const double m00 = c.right.x, m01 = c.up.x, m02 = c.forward.x;
    const double m10 = c.right.y, m11 = c.up.y, m12 = c.forward.y;
    const double m20 = c.right.z, m21 = c.up.z, m22 = c.forward.z;
    const double trace = m00 + m11 + m22;
    Quat q;
    if (trace > 0.0) {
        const double s = std::sqrt(trace + 1.0) * 2.0;
        q = {0.25 * s, (m21 - m12) / s, (m02 - m20) / s, (m10 - m01) / s};
    } else if (m00 > m11 && m00 > m22) {
        const double s = std::sqrt(1.0 + m00 - m11 - m22) * 2.0;
        q = {(m21 - m12) / s, 0.25 * s, (m01 + m10) / s, (m02 + m20) / s};
    } else if (m11 > m22) {
        const double s = std::sqrt(1.0 + m11 - m00 - m22) * 2.0;
        q = {(m02 - m20) / s, (m01 + m10) / s, 0.25 * s, (m12 + m21) / s};
    } else {
        const double s = std::sqrt(1.0 + m22 - m00 - m11) * 2.0;
        q = {(m10 - m01) / s, (m02 + m20) / s, (m12 + m21) / s, 0.25 * s};
    }
    return q;
}

Vec3 rotate(const Quat &q, const Vec3 &v) {
    const Vec3 u{q.x, q.y, q.z};
    return u * (2.0 * dot(u, v)) + v * (q.w * q.w - dot(u, u)) + cross(u, v) * (2.0 * q.w);
}

Quat slerp(Quat a, Quat b, double t) {
    double d = a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
    if (d < 0.0) {
        b = {-b.w, -b.x, -b.y, -b.z};
        d = -d;
    }
    double wa, wb;
    if (d > 0.9995) {
        wa = 1.0 - t;
        wb = t;
    } else {
        const double theta = std::acos(std::min(d, 1.0));
        const double s = std::sin(theta);
        wa = std::sin((1.0 - t) * theta) / s;
        wb = std::sin(t * theta) / s;
    }
    Quat q{wa * a.w + wb * b.w, wa * a.x + wb * b.x, wa * a.y + wb * b.y, wa * a.z + wb * b.z};
    const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    return {q.w / n, q.x / n, q.y / n, q.z / n};
}

} // namespace

Camera Camera::look_at(const Vec3 &eye, const Vec3 &look, const Vec3 &up_hint, double fov_y_deg, double aspect) {
    const Vec3 dir = look - eye;
    if (length(dir) < 1e-12)
        throw Error(ErrorKind::InvalidScene, "camera eye and look point coincide");
    if (!(fov_y_deg > 0.0 && fov_y_deg < 180.0))
        throw Error(ErrorKind::InvalidScene, "camera fov must lie in (0, 180) degrees");
    if (!(aspect > 0.0))
        throw Error(ErrorKind::InvalidDimensions, "camera aspect ratio must be positive");
    Camera c;
    c.eye = eye;
    c.forward = normalize(dir);
    const Vec3 r = cross(up_hint, c.forward);
    if (length(r) < 1e-12)
        throw Error(ErrorKind::InvalidScene, "camera up vector is parallel to the view direction");
    c.right = normalize(r);
    c.up = cross(c.forward, c.right);
    c.film_distance = 1.0;
    c.film_half_height = std::tan(0.5 * fov_y_deg * kPi / 180.0);
    c.film_half_width = c.film_half_height * aspect;
    return c;
}

void TriangleMesh::compute_bounds() {
    if (vertices.empty()) {
        bounds = {};
        return;
    }
    bounds.lo = bounds.hi = vertices.front();
    for (const Vec3 &v : vertices) {
        bounds.lo = {std::min(bounds.lo.x, v.x), std::min(bounds.lo.y, v.y), std::min(bounds.lo.z, v.z)};
        bounds.hi = {std::max(bounds.hi.x, v.x), std::max(bounds.hi.y, v.y), std::max(bounds.hi.z, v.z)};
    }
}

void validate(const Scene &scene) {
    for (std::size_t k = 0; k < scene.primitives.size(); ++k) {
        const std::string which = "primitive " + std::to_string(k + 1);
        if (const auto *s = std::get_if<Sphere>(&scene.primitives[k])) {
            if (!(s->radius > 0.0))
                throw Error(ErrorKind::InvalidScene, which + ": sphere radius must be positive");
        } else {
            const auto &m = std::get<TriangleMesh>(scene.primitives[k]);
            if (m.triangles.empty())
                throw Error(ErrorKind::InvalidScene, which + ": mesh has no triangles");
            for (const auto &tri : m.triangles) {
                for (auto idx : tri)
                    if (idx >= m.vertices.size())
                        throw Error(ErrorKind::InvalidScene, which + ": triangle index out of range");
                const Vec3 &p0 = m.vertices[tri[0]];
                const double area2 = length(cross(m.vertices[tri[1]] - p0, m.vertices[tri[2]] - p0));
                if (!(area2 > 0.0))
                    throw Error(ErrorKind::InvalidScene, which + ": degenerate triangle");
            }
        }
    }
    if (std::abs(length(scene.light.direction) - 1.0) > 1e-6)
        throw Error(ErrorKind::InvalidScene, "light direction must be unit length");
    if (!(scene.light.intensity >= 0.0))
        throw Error(ErrorKind::InvalidScene, "light intensity must be non-negative");
    if (!(scene.ambient >= 0.0 && scene.ambient <= 1.0))
        throw Error(ErrorKind::InvalidScene, "ambient must lie in [0,1]");
    if (scene.environment.empty())
        throw Error(ErrorKind::InvalidScene, "environment image is empty");
}

Vec3 film_point(const Camera &camera, TexCoord uv) {
    return camera.eye + camera.forward * camera.film_distance + camera.right * ((2.0 * uv.u - 1.0) * camera.film_half_width) -
           camera.up * ((2.0 * uv.v - 1.0) * camera.film_half_height);
}

Vec3 local_to_world(const Camera &camera, const Vec3 &v) {
    return camera.right * v.x + camera.up * v.y + camera.forward * v.z;
}

ColorRGB equirect_lookup(const Vec3 &d, const ColorImage &env) {
    const double u = 0.5 + std::atan2(d.x, d.z) / (2.0 * kPi);
    const double v = 0.5 - std::asin(std::clamp(d.y, -1.0, 1.0)) / kPi;
    const int w = env.width();
    const int h = env.height();

    const double x = u * w - 0.5;
    const double fx_floor = std::floor(x);
    const double fx = x - fx_floor;
    int i0 = static_cast<int>(fx_floor) % w;
    if (i0 < 0)
        i0 += w;
    const int i1 = (i0 + 1) % w;

    const double y = std::clamp(v * h - 0.5, 0.0, static_cast<double>(h - 1));
    const int j0 = static_cast<int>(std::floor(y));
    const int j1 = std::min(j0 + 1, h - 1);
    const double fy = y - j0;

    auto mix = [&](double a00, double a10, double a01, double a11) {
        const double top = a00 + (a10 - a00) * fx;
        const double bottom = a01 + (a11 - a01) * fx;
        return top + (bottom - top) * fy;
    };
    const ColorRGB &c00 = env.at(i0, j0);
    const ColorRGB &c10 = env.at(i1, j0);
    const ColorRGB &c01 = env.at(i0, j1);
    const ColorRGB &c11 = env.at(i1, j1);
    return ColorRGB::clamped(mix(c00.r, c10.r, c01.r, c11.r), mix(c00.g, c10.g, c01.g, c11.g),
                             mix(c00.b, c10.b, c01.b, c11.b));
}

GBufferSample trace(const Scene &scene, const Ray &ray) {
    Hit best;
    for (std::size_t k = 0; k < scene.primitives.size(); ++k) {
        const auto id = static_cast<std::uint32_t>(k + 1);
        if (const auto *s = std::get_if<Sphere>(&scene.primitives[k])) {
            double t;
            Vec3 n;
            if (intersect_sphere(*s, ray, t, n) && t < best.t) {
                best = {t, n, &s->material, id};
            }
        } else {
            intersect_mesh(std::get<TriangleMesh>(scene.primitives[k]), id, ray, best);
        }
    }

    GBufferSample out;
    if (!best.material) {
        out.color = equirect_lookup(ray.direction, scene.environment);
        out.depth = kInf;
        out.normal = -ray.direction;
        out.object_id = 0;
        out.position = {};
        return out;
    }

    const Vec3 facing = dot(best.normal, ray.direction) > 0.0 ? -best.normal : best.normal;
    const ColorRGB albedo =
        best.material->texture ? equirect_lookup(best.normal, *best.material->texture) : best.material->albedo;
    const double lambert = std::max(0.0, dot(facing, -scene.light.direction));
    const double k = scene.ambient + scene.light.intensity * lambert;
    out.color = ColorRGB::clamped(albedo.r * k, albedo.g * k, albedo.b * k);
    out.depth = best.t;
    out.normal = facing;
    out.object_id = best.object_id;
    out.position = ray.origin + ray.direction * best.t;
    return out;
}

Camera camera_at(const Scene &scene, int frame, int width, int height) {
    const auto &path = scene.camera_path;
    if (path.empty())
        throw Error(ErrorKind::InvalidScene, "scene has no camera keyframes");
    if (width < 1 || height < 1)
        throw Error(ErrorKind::InvalidDimensions, "render size must be positive");
    const double aspect = static_cast<double>(width) / height;

    std::vector<CameraKey> keys = path;
    std::stable_sort(keys.begin(), keys.end(), [](const CameraKey &a, const CameraKey &b) { return a.frame < b.frame; });
    auto make = [&](const CameraKey &k) { return Camera::look_at(k.eye, k.look, k.up, k.fov_y_deg, aspect); };

    if (frame <= keys.front().frame)
        return make(keys.front());
    if (frame >= keys.back().frame)
        return make(keys.back());

    auto hi = std::upper_bound(keys.begin(), keys.end(), frame,
                               [](int f, const CameraKey &k) { return f < k.frame; });
    const CameraKey &k1 = *hi;
    const CameraKey &k0 = *(hi - 1);
    const Camera c0 = make(k0);
    const Camera c1 = make(k1);
    if (k0.frame == frame)
        return c0;
    const double t = static_cast<double>(frame - k0.frame) / (k1.frame - k0.frame);

    const Quat q = slerp(basis_to_quat(c0), basis_to_quat(c1), t);
    Camera c = c0;
    c.eye = lerp(c0.eye, c1.eye, t);
    c.forward = normalize(rotate(q, {0.0, 0.0, 1.0}));
    const Vec3 up = rotate(q, {0.0, 1.0, 0.0});
    c.right = normalize(cross(up, c.forward));
    c.up = cross(c.forward, c.right);
    c.film_half_height = c0.film_half_height + (c1.film_half_height - c0.film_half_height) * t;
    c.film_half_width = c.film_half_height * aspect;
    return c;
}

ColorImage procedural_environment(int width, int height) {
    ColorImage img(width, height);
    auto code = [](double x) { return srgb_code_to_linear(linear_to_srgb_code(x)); };
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            const double u = (i + 0.5) / width;
            const double v = (j + 0.5) / height;
            // Periodic in u so the seam at u = 0/1 is continuous.
            const double a = std::sin(2.0 * kPi * 3.0 * u) * std::cos(kPi * 5.0 * v);
            const double b = std::sin(2.0 * kPi * (7.0 * u + 2.0 * v));
            const double stripes = std::sin(2.0 * kPi * 11.0 * u) > 0.6 ? 0.35 : 0.0;
            const double r = 0.5 + 0.45 * a;
            const double g = 0.5 + 0.40 * b * (1.0 - v) - 0.1 * stripes;
            const double bl = 0.2 + 0.6 * v + stripes;
            img.store(i, j, ColorRGB::clamped(code(r), code(g), code(std::min(bl, 1.0))));
        }
    }
    return img;
}

} // namespace rcp

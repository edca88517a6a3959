// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/scene_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "rcp/error.h"
#include "rcp/image_io.h"

namespace rcp::scenefile {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == sep || (sep == ' ' && line[pos] == '\t')))
            ++pos;
        if (pos >= line.size())
            break;
        std::size_t end = pos;
        while (end < line.size() && line[end] != sep && !(sep == ' ' && line[end] == '\t'))
            ++end;
        out.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

class LineParser {
  public:
    LineParser(const std::string &source, int line) : source_(source), line_(line) {}

    [[noreturn]] void fail(const std::string &msg) const {
        throw Error(ErrorKind::Parse, source_ + ":" + std::to_string(line_) + ": " + msg);
    }

    double number(std::string_view tok) const {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v))
            fail("expected a number, got '" + std::string(tok) + "'");
        return v;
    }

    int integer(std::string_view tok) const {
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            fail("expected an integer, got '" + std::string(tok) + "'");
        return v;
    }

    Vec3 triple(std::string_view tok) const {
        const auto parts = split(tok, ',');
        if (parts.size() != 3)
            fail("expected x,y,z, got '" + std::string(tok) + "'");
        return {number(parts[0]), number(parts[1]), number(parts[2])};
    }

    ColorRGB color(std::string_view r, std::string_view g, std::string_view b) const {
        const ColorRGB c{number(r), number(g), number(b)};
        for (double ch : {c.r, c.g, c.b})
            if (ch < 0.0 || ch > 1.0)
                fail("color channels must lie in [0,1]");
        return c;
    }

  private:
    const std::string &source_;
    int line_;
};

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fmt(const Vec3 &v) { return fmt(v.x) + "," + fmt(v.y) + "," + fmt(v.z); }

std::string fmt(const ColorRGB &c) { return fmt(c.r) + " " + fmt(c.g) + " " + fmt(c.b); }

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Material make_material(const std::optional<ColorRGB> &albedo, const std::optional<std::string> &texture,
                       const std::filesystem::path &base_dir) {
    Material m;
    if (albedo)
        m.albedo = *albedo;
    if (texture)
        m.texture = std::make_shared<const ColorImage>(io::read_png(base_dir / *texture));
    return m;
}

} // namespace

SceneDescription parse_scene(std::string_view text, const std::string &source) {
    SceneDescription desc;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        const auto tok = split(line, ' ');
        if (tok.empty())
            continue;
        const LineParser p(source, line_no);
        const std::string_view kw = tok[0];

        if (kw == "env") {
            if (tok.size() != 2)
                p.fail("usage: env <image-path>");
            desc.env_path = std::string(tok[1]);
        } else if (kw == "env_color") {
            if (tok.size() != 4)
                p.fail("usage: env_color r g b");
            desc.env_color = p.color(tok[1], tok[2], tok[3]);
        } else if (kw == "sphere") {
            SphereDesc s;
            if (tok.size() == 5) {
            } else if (tok.size() == 9 && tok[5] == "albedo") {
                s.albedo = p.color(tok[6], tok[7], tok[8]);
            } else if (tok.size() == 7 && tok[5] == "tex") {
                s.texture = std::string(tok[6]);
            } else {
                p.fail("usage: sphere cx cy cz r [albedo r g b | tex <path>]");
            }
            s.center = {p.number(tok[1]), p.number(tok[2]), p.number(tok[3])};
            s.radius = p.number(tok[4]);
            if (!(s.radius > 0.0))
                p.fail("sphere radius must be positive");
            desc.primitives.emplace_back(std::move(s));
        } else if (kw == "mesh") {
            MeshDesc m;
            if (tok.size() == 6 && tok[2] == "albedo")
                m.albedo = p.color(tok[3], tok[4], tok[5]);
            else if (tok.size() != 2)
                p.fail("usage: mesh <obj-path> [albedo r g b]");
            m.path = std::string(tok[1]);
            desc.primitives.emplace_back(std::move(m));
        } else if (kw == "light") {
            if (tok.size() != 5)
                p.fail("usage: light dx dy dz intensity");
            DirectionalLight l;
            l.direction = {p.number(tok[1]), p.number(tok[2]), p.number(tok[3])};
            l.intensity = p.number(tok[4]);
            if (length(l.direction) == 0.0)
                p.fail("light direction must be non-zero");
            if (l.intensity < 0.0)
                p.fail("light intensity must be non-negative");
            desc.light = l;
        } else if (kw == "ambient") {
            if (tok.size() != 2)
                p.fail("usage: ambient a");
            const double a = p.number(tok[1]);
            if (a < 0.0 || a > 1.0)
                p.fail("ambient must lie in [0,1]");
            desc.ambient = a;
        } else if (kw == "camera") {
            CameraKey key;
            bool have_eye = false, have_look = false;
            for (std::size_t k = 1; k < tok.size(); ++k) {
                const auto eq = tok[k].find('=');
                if (eq == std::string_view::npos)
                    p.fail("expected key=value, got '" + std::string(tok[k]) + "'");
                const std::string_view key_name = tok[k].substr(0, eq);
                const std::string_view value = tok[k].substr(eq + 1);
                if (key_name == "frame") {
                    key.frame = p.integer(value);
                } else if (key_name == "eye") {
                    key.eye = p.triple(value);
                    have_eye = true;
                } else if (key_name == "look") {
                    key.look = p.triple(value);
                    have_look = true;
                } else if (key_name == "up") {
                    key.up = p.triple(value);
                } else if (key_name == "fov") {
                    key.fov_y_deg = p.number(value);
                    if (!(key.fov_y_deg > 0.0 && key.fov_y_deg < 180.0))
                        p.fail("fov must lie in (0, 180) degrees");
                } else {
                    p.fail("unknown camera field '" + std::string(key_name) + "'");
                }
            }
            if (!have_eye || !have_look)
                p.fail("camera needs eye= and look=");
            if (length(key.look - key.eye) == 0.0)
                p.fail("camera eye and look coincide");
            if (length(cross(key.up, key.look - key.eye)) == 0.0)
                p.fail("camera up is parallel to the view direction");
            desc.cameras.push_back(key);
        } else {
            p.fail("unknown statement '" + std::string(kw) + "'");
        }
    }
    return desc;
}

std::string write_scene(const SceneDescription &desc) {
    std::string out;
    if (desc.env_path)
        out += "env " + *desc.env_path + "\n";
    if (desc.env_color)
        out += "env_color " + fmt(*desc.env_color) + "\n";
    for (const auto &prim : desc.primitives) {
        if (const auto *s = std::get_if<SphereDesc>(&prim)) {
            out += "sphere " + fmt(s->center.x) + " " + fmt(s->center.y) + " " + fmt(s->center.z) + " " +
                   fmt(s->radius);
            if (s->albedo)
                out += " albedo " + fmt(*s->albedo);
            else if (s->texture)
                out += " tex " + *s->texture;
            out += "\n";
        } else {
            const auto &m = std::get<MeshDesc>(prim);
            out += "mesh " + m.path;
            if (m.albedo)
                out += " albedo " + fmt(*m.albedo);
            out += "\n";
        }
    }
    if (desc.light)
        out += "light " + fmt(desc.light->direction.x) + " " + fmt(desc.light->direction.y) + " " +
               fmt(desc.light->direction.z) + " " + fmt(desc.light->intensity) + "\n";
    if (desc.ambient)
        out += "ambient " + fmt(*desc.ambient) + "\n";
    for (const auto &c : desc.cameras)
        out += "camera frame=" + std::to_string(c.frame) + " eye=" + fmt(c.eye) + " look=" + fmt(c.look) +
               " up=" + fmt(c.up) + " fov=" + fmt(c.fov_y_deg) + "\n";
    return out;
}

TriangleMesh read_obj(const std::filesystem::path &path) {
    const std::string text = read_text(path);
    TriangleMesh mesh;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tok = split(line, ' ');
        if (tok.empty() || tok[0].front() == '#')
            continue;
        const LineParser p(path.string(), line_no);
        if (tok[0] == "v") {
            if (tok.size() < 4)
                p.fail("vertex needs three coordinates");
            mesh.vertices.push_back({p.number(tok[1]), p.number(tok[2]), p.number(tok[3])});
        } else if (tok[0] == "f") {
            if (tok.size() < 4)
                p.fail("face needs at least three vertices");
            std::vector<std::uint32_t> idx;
            for (std::size_t k = 1; k < tok.size(); ++k) {
                const std::string_view vref = tok[k].substr(0, tok[k].find('/'));
                int v = p.integer(vref);
                if (v < 0)
                    v += static_cast<int>(mesh.vertices.size()) + 1;
                if (v < 1 || v > static_cast<int>(mesh.vertices.size()))
                    p.fail("face index out of range");
                idx.push_back(static_cast<std::uint32_t>(v - 1));
            }
            for (std::size_t k = 1; k + 1 < idx.size(); ++k)
                mesh.triangles.push_back({idx[0], idx[k], idx[k + 1]});
        }
    }
    mesh.compute_bounds();
    return mesh;
}

Scene load_scene(const SceneDescription &desc, const std::filesystem::path &base_dir) {
    Scene scene;
    if (desc.env_path)
        scene.environment = io::read_png(base_dir / *desc.env_path);
    else if (desc.env_color)
        scene.environment = ColorImage(1, 1, *desc.env_color);
    for (const auto &prim : desc.primitives) {
        if (const auto *s = std::get_if<SphereDesc>(&prim)) {
            scene.primitives.emplace_back(Sphere{s->center, s->radius, make_material(s->albedo, s->texture, base_dir)});
        } else {
            const auto &m = std::get<MeshDesc>(prim);
            TriangleMesh mesh = read_obj(base_dir / m.path);
            mesh.material = make_material(m.albedo, std::nullopt, base_dir);
            scene.primitives.emplace_back(std::move(mesh));
        }
    }
    if (desc.light) {
        scene.light = *desc.light;
        scene.light.direction = normalize(desc.light->direction);
    }
    if (desc.ambient)
        scene.ambient = *desc.ambient;
    scene.camera_path = desc.cameras;
    validate(scene);
    return scene;
}

Scene read_scene_file(const std::filesystem::path &path) {
    const std::string text = read_text(path);
    return load_scene(parse_scene(text, path.string()), path.parent_path());
}

SceneDescription example_scene_description() {
    SceneDescription d;
    d.env_path = "example_env.png";
    d.primitives.emplace_back(SphereDesc{{-1.4, 0.0, 6.0}, 1.0, ColorRGB{0.9, 0.25, 0.2}, std::nullopt});
    d.primitives.emplace_back(SphereDesc{{1.3, -0.3, 5.0}, 0.7, ColorRGB{0.2, 0.6, 0.95}, std::nullopt});
    d.primitives.emplace_back(SphereDesc{{0.2, 1.1, 8.0}, 1.2, ColorRGB{0.95, 0.85, 0.3}, std::nullopt});
    d.light = DirectionalLight{{-0.4, -1.0, 0.6}, 0.9};
    d.ambient = 0.15;
    d.cameras.push_back(CameraKey{0, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}, 60.0});
    return d;
}

std::filesystem::path write_example_scene(const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
    const SceneDescription d = example_scene_description();
    io::write_png(dir / *d.env_path, procedural_environment(512, 256));
    const auto path = dir / "example.scn";
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    out << "# generated example scene\n" << write_scene(d);
    if (!out)
        throw Error(ErrorKind::Io, "write failed for " + path.string());
    return path;
}

} // namespace rcp::scenefile

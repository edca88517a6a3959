// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "rcp/error.h"
#include "rcp/image_io.h"
#include "rcp/recursion.h"
#include "rcp/scene_file.h"
#include "rcp/warp.h"

namespace rcp::cli {

namespace fs = std::filesystem;

namespace {

enum class Mode { Ray, Warp };
enum class MappingKind { Color, Depth, Normal, Affine, Null };

struct RunConfig {
    Mode mode = Mode::Ray;
    std::string scene_path;
    std::string input_image_path;
    std::string output_dir = ".";
    std::string size = "256x256";
    std::string frames;
    int iterations = 6;
    int spp = 1;
    std::uint64_t seed = 0;
    double lambda = 0.3;
    MappingKind mapping = MappingKind::Color;
    std::vector<double> affine;
    MappingKind eye_mapping = MappingKind::Null;
    std::optional<double> eye_lambda;
    double z0 = 5.0;
    double depth_clamp = 100.0;
    int loops = 1;
    double noise = 0.0;
    std::uint64_t noise_seed = 0;
    TemporalMode temporal = TemporalMode::Restart;
    warp::EdgeMode edge_mode = warp::EdgeMode::Mirror;
    std::optional<double> max_smudge_px;
    bool use_depth = false;
    bool dump_aux = false;
    bool dump_iterations = true;
};

struct Size {
    int width;
    int height;
};

Size parse_size(const std::string &text) {
    const auto x = text.find('x');
    int w = 0, h = 0;
    auto parse = [](std::string_view s, int &v) {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
    };
    if (x == std::string::npos || !parse(std::string_view(text).substr(0, x), w) ||
        !parse(std::string_view(text).substr(x + 1), h))
        throw Error(ErrorKind::Parse, "--size expects WIDTHxHEIGHT, got '" + text + "'");
    if (w < 1 || h < 1)
        throw Error(ErrorKind::InvalidDimensions, "--size must be positive, got '" + text + "'");
    return {w, h};
}

FrameRange parse_frames(const std::string &text, const Scene &scene) {
    if (text.empty()) {
        if (scene.camera_path.empty())
            throw Error(ErrorKind::InvalidScene, "scene has no camera keyframes");
        auto [lo, hi] = std::minmax_element(scene.camera_path.begin(), scene.camera_path.end(),
                                            [](const CameraKey &a, const CameraKey &b) { return a.frame < b.frame; });
        return {lo->frame, hi->frame};
    }
    const auto colon = text.find(':');
    auto parse = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
            throw Error(ErrorKind::Parse, "--frames expects N or FIRST:LAST, got '" + text + "'");
        return v;
    };
    if (colon == std::string::npos) {
        const int f = parse(text);
        return {f, f};
    }
    const FrameRange r{parse(std::string_view(text).substr(0, colon)), parse(std::string_view(text).substr(colon + 1))};
    if (r.last < r.first)
        throw Error(ErrorKind::InvalidInput, "--frames range is empty: '" + text + "'");
    return r;
}

displacement::Mapping make_mapping(MappingKind kind, double lambda, const RunConfig &c) {
    switch (kind) {
    case MappingKind::Color:
        return displacement::AffineColor::canonical(lambda);
    case MappingKind::Affine: {
        if (c.affine.size() != 12)
            throw Error(ErrorKind::Parse, "--affine expects 12 numbers (row-major 3x3 matrix, then bias)");
        displacement::AffineColor a;
        std::copy_n(c.affine.begin(), 9, a.matrix.m.begin());
        a.bias = {c.affine[9], c.affine[10], c.affine[11]};
        return a;
    }
    case MappingKind::Depth:
        return displacement::DepthFocus{lambda, c.z0, c.depth_clamp};
    case MappingKind::Normal:
        return displacement::NormalTangent{lambda, c.loops, c.noise, c.noise_seed};
    case MappingKind::Null:
        return displacement::Null{};
    }
    return displacement::Null{};
}

std::string frame_stem(int frame, int iter) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "frame_%04d_iter_%02d", frame, iter);
    return buf;
}

void write_outputs(const fs::path &dir, int frame, const std::vector<FrameBuffer> &buffers, const RunConfig &c) {
    const int last = static_cast<int>(buffers.size()) - 1;
    for (int n = c.dump_iterations ? 0 : last; n <= last; ++n) {
        const std::string stem = frame_stem(frame, n);
        io::write_png(dir / (stem + ".png"), color_channel(buffers[n]));
        if (c.dump_aux) {
            io::write_pfm(dir / (stem + "_depth.pfm"), io::depth_image(buffers[n]));
            io::write_pfm(dir / (stem + "_normal.pfm"), io::normal_image(buffers[n]));
        }
    }
}

FrameBuffer buffer_from_image(const ColorImage &img) {
    FrameBuffer fb(img.width(), img.height());
    for (int j = 0; j < img.height(); ++j)
        for (int i = 0; i < img.width(); ++i) {
            GBufferSample s;
            s.color = img.at(i, j);
            s.depth = std::numeric_limits<double>::infinity();
            s.normal = {0.0, 0.0, -1.0};
            fb.store(i, j, s);
        }
    return fb;
}

int render(const RunConfig &c, std::ostream &out) {
    using Clock = std::chrono::steady_clock;
    if (c.mode == Mode::Ray && c.scene_path.empty())
        throw Error(ErrorKind::Parse, "ray mode requires --scene");
    if (c.mode == Mode::Warp && c.scene_path.empty() && c.input_image_path.empty())
        throw Error(ErrorKind::Parse, "warp mode requires --input or --scene");

    const Size size = parse_size(c.size);
    RecursionConfig rc;
    rc.iterations = c.iterations;
    rc.samples_per_pixel = c.spp;
    rc.rng_seed = c.seed;
    rc.pixel_mapping = make_mapping(c.mapping, c.lambda, c);
    rc.eye_mapping = make_mapping(c.eye_mapping, c.eye_lambda.value_or(c.lambda), c);
    rc.temporal_mode = c.temporal;
    validate(rc);

    const fs::path dir = c.output_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorKind::Io, "cannot create output directory " + dir.string() + ": " + ec.message());

    if (c.mode == Mode::Warp && !c.input_image_path.empty()) {
        if (c.use_depth)
            throw Error(ErrorKind::InvalidInput, "--use-depth needs a scene; an input image carries no depth");
        const FrameBuffer input = buffer_from_image(io::read_png(c.input_image_path));
        warp::WarpParams wp{c.max_smudge_px.value_or(c.lambda * std::min(input.width(), input.height()) / 10.0),
                            c.edge_mode, false, c.z0, c.depth_clamp, c.iterations};
        const auto t0 = Clock::now();
        const auto buffers = warp::warp_recursive(input, wp);
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        write_outputs(dir, 0, buffers, c);
        out << "frame " << 0 << ": " << c.iterations << " iterations, " << secs << " s\n";
        return kExitOk;
    }

    const Scene scene = scenefile::read_scene_file(c.scene_path);
    const FrameRange frames = parse_frames(c.frames, scene);
    const warp::WarpParams wp{c.max_smudge_px.value_or(c.lambda * std::min(size.width, size.height) / 10.0),
                              c.edge_mode, c.use_depth, c.z0, c.depth_clamp, c.iterations};
    if (c.mode == Mode::Warp)
        warp::validate(wp);

    std::optional<FrameBuffer> carried;
    for (int f = frames.first; f <= frames.last; ++f) {
        const auto t0 = Clock::now();
        const Camera camera = camera_at(scene, f, size.width, size.height);
        std::vector<FrameBuffer> buffers;
        if (c.mode == Mode::Ray) {
            const bool carry = c.temporal == TemporalMode::Carry && carried.has_value();
            const FrameBuffer initial =
                carry ? *carried : seed_buffer(size.width, size.height, rc.pixel_mapping, camera);
            buffers = render_iterations(scene, camera, initial, rc);
        } else {
            RecursionConfig plain = rc;
            plain.pixel_mapping = displacement::Null{};
            plain.eye_mapping = displacement::Null{};
            const FrameBuffer first =
                render_pass(scene, camera, seed_buffer(size.width, size.height, plain.pixel_mapping, camera), plain, 1);
            buffers = warp::warp_recursive(first, wp);
        }
        carried = buffers.back();
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        write_outputs(dir, f, buffers, c);
        char idx[16];
        std::snprintf(idx, sizeof idx, "%04d", f);
        out << "frame " << idx << ": " << c.iterations << " iterations, " << secs << " s\n";
    }
    return kExitOk;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Parse:
        return kExitUsage;
    case ErrorKind::Io:
        return kExitIo;
    case ErrorKind::InvalidDimensions:
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidScene:
        return kExitConfig;
    }
    return kExitConfig;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Recursive camera painting renderer", "rcp"};
    app.require_subcommand(1);

    RunConfig c;
    auto *render_cmd = app.add_subcommand("render", "Render a scene (ray mode) or smudge an image (warp mode)");
    const std::map<std::string, Mode> modes{{"ray", Mode::Ray}, {"warp", Mode::Warp}};
    const std::map<std::string, MappingKind> kinds{{"color", MappingKind::Color},
                                                   {"depth", MappingKind::Depth},
                                                   {"normal", MappingKind::Normal},
                                                   {"affine", MappingKind::Affine},
                                                   {"null", MappingKind::Null}};
    const std::map<std::string, warp::EdgeMode> edges{
        {"clamp", warp::EdgeMode::Clamp}, {"wrap", warp::EdgeMode::Wrap}, {"mirror", warp::EdgeMode::Mirror}};
    const std::map<std::string, TemporalMode> temporal{{"restart", TemporalMode::Restart},
                                                       {"carry", TemporalMode::Carry}};

    render_cmd->add_option("--scene", c.scene_path, "Scene file");
    render_cmd->add_option("--input", c.input_image_path, "Input PNG for warp mode");
    render_cmd->add_option("--mode", c.mode, "ray or warp")->transform(CLI::CheckedTransformer(modes));
    render_cmd->add_option("-o,--output", c.output_dir, "Output directory");
    render_cmd->add_option("--size", c.size, "WIDTHxHEIGHT");
    render_cmd->add_option("--frames", c.frames, "Frame N or FIRST:LAST (default: span of the camera path)");
    render_cmd->add_option("--iterations", c.iterations, "Passes per frame");
    render_cmd->add_option("--spp", c.spp, "Samples per pixel");
    render_cmd->add_option("--seed", c.seed, "Jitter seed");
    render_cmd->add_option("--lambda", c.lambda, "Displacement scale");
    render_cmd->add_option("--mapping", c.mapping, "color, depth, normal, affine or null")
        ->transform(CLI::CheckedTransformer(kinds));
    render_cmd->add_option("--affine", c.affine, "12 numbers: row-major 3x3 matrix then bias")->delimiter(',');
    render_cmd->add_option("--eye-mapping", c.eye_mapping, "Eye displacement mapping (default null)")
        ->transform(CLI::CheckedTransformer(kinds));
    render_cmd->add_option("--eye-lambda", c.eye_lambda, "Eye displacement scale (default --lambda)");
    render_cmd->add_option("--z0", c.z0, "In-focus depth");
    render_cmd->add_option("--depth-clamp", c.depth_clamp, "Finite stand-in for infinite depth");
    render_cmd->add_option("--loops", c.loops, "Normal mapping rounds per pass");
    render_cmd->add_option("--noise", c.noise, "Normal mapping noise amplitude");
    render_cmd->add_option("--noise-seed", c.noise_seed, "Normal mapping noise seed");
    render_cmd->add_option("--temporal", c.temporal, "restart or carry")->transform(CLI::CheckedTransformer(temporal));
    render_cmd->add_option("--edge-mode", c.edge_mode, "clamp, wrap or mirror")
        ->transform(CLI::CheckedTransformer(edges));
    render_cmd->add_option("--max-smudge", c.max_smudge_px, "Warp distance in pixels (default lambda*min(W,H)/10)");
    render_cmd->add_flag("--use-depth", c.use_depth, "Scale warp distance by |depth - z0|");
    render_cmd->add_flag("--dump-aux", c.dump_aux, "Also write depth and normal PFM files");
    render_cmd->add_flag("--dump-iterations,!--last-only", c.dump_iterations,
                         "Write every iteration (default) or only the last");

    std::string example_dir;
    auto *example_cmd = app.add_subcommand("example-scene", "Write an example scene and its environment texture");
    example_cmd->add_option("-o,--output", example_dir, "Output directory")->required();

    std::vector<std::string> argv_store{"rcp"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*example_cmd) {
            out << scenefile::write_example_scene(example_dir).string() << "\n";
            return kExitOk;
        }
        return render(c, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const fs::filesystem_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

int run(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace rcp::cli

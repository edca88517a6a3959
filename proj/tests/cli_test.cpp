// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "rcp/cli.h"
#include "rcp/image_io.h"
#include "rcp/scene_file.h"
#include "test_util.h"

using namespace rcp;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> files_in(const fs::path &dir) {
    std::vector<std::string> names;
    for (const auto &e : fs::directory_iterator(dir))
        names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

} // namespace

TEST(Cli, RayModeWritesEveryIteration) {
    testutil::TempDir dir("cli_ray");
    const auto scene = scenefile::write_example_scene(dir.path() / "scene");
    const auto out = dir.path() / "out";
    const Result r = run_cli({"render", "--scene", scene.string(), "--mode", "ray", "--iterations", "6", "--lambda",
                              "0.3", "--size", "48x32", "--seed", "1", "-o", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::vector<std::string> expected;
    for (int n = 0; n <= 6; ++n)
        expected.push_back("frame_0000_iter_0" + std::to_string(n) + ".png");
    EXPECT_EQ(files_in(out), expected);
    const ColorImage img = io::read_png(out / "frame_0000_iter_06.png");
    EXPECT_EQ(img.width(), 48);
    EXPECT_EQ(img.height(), 32);
    EXPECT_NE(r.out.find("frame 0000: 6 iterations"), std::string::npos);
}

TEST(Cli, SameSeedGivesIdenticalBytes) {
    testutil::TempDir dir("cli_det");
    const auto scene = scenefile::write_example_scene(dir.path() / "scene");
    auto render = [&](const std::string &name) {
        const auto out = dir.path() / name;
        const Result r = run_cli({"render", "--scene", scene.string(), "--iterations", "3", "--spp", "2",
                                  "--size", "40x24", "--seed", "7", "--dump-aux", "-o", out.string()});
        EXPECT_EQ(r.code, 0) << r.err;
        return out;
    };
    const auto a = render("a");
    const auto b = render("b");
    ASSERT_EQ(files_in(a), files_in(b));
    EXPECT_EQ(files_in(a).size(), 12u); // 4 iterations x (png + depth + normal)
    for (const auto &name : files_in(a))
        EXPECT_EQ(testutil::read_bytes(a / name), testutil::read_bytes(b / name)) << name;

    const io::FloatImage depth = io::read_pfm(a / "frame_0000_iter_03_depth.pfm");
    EXPECT_EQ(depth.width, 40);
    EXPECT_EQ(depth.height, 24);
    EXPECT_EQ(depth.channels, 1);
    EXPECT_EQ(io::read_pfm(a / "frame_0000_iter_03_normal.pfm").channels, 3);
}

TEST(Cli, LastOnlyAndWalkthrough) {
    testutil::TempDir dir("cli_walk");
    const auto scene_dir = dir.path() / "scene";
    scenefile::write_example_scene(scene_dir);
    std::ofstream(scene_dir / "walk.scn") << "env example_env.png\nsphere 0 0 6 1\n"
                                             "camera frame=0 eye=0,0,0 look=0,0,1\n"
                                             "camera frame=2 eye=0.5,0,0 look=0.5,0,1\n";
    const auto out = dir.path() / "out";
    const Result r = run_cli({"render", "--scene", (scene_dir / "walk.scn").string(), "--iterations", "2",
                              "--size", "16x16", "--last-only", "--temporal", "carry", "-o", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(files_in(out), (std::vector<std::string>{"frame_0000_iter_02.png", "frame_0001_iter_02.png",
                                                       "frame_0002_iter_02.png"}));
}

TEST(Cli, WarpModeOverImageAndScene) {
    testutil::TempDir dir("cli_warp");
    io::write_png(dir.path() / "in.png", procedural_environment(30, 20));
    const Result r = run_cli({"render", "--mode", "warp", "--input", (dir.path() / "in.png").string(), "--iterations",
                              "3", "--edge-mode", "wrap", "-o", (dir.path() / "w").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(files_in(dir.path() / "w").size(), 4u);
    EXPECT_EQ(io::read_png(dir.path() / "w" / "frame_0000_iter_00.png"), procedural_environment(30, 20));
    EXPECT_EQ(io::read_png(dir.path() / "w" / "frame_0000_iter_03.png").width(), 30);

    const auto scene = scenefile::write_example_scene(dir.path() / "scene");
    const Result s = run_cli({"render", "--mode", "warp", "--scene", scene.string(), "--iterations", "2", "--size",
                              "24x24", "--use-depth", "--z0", "6", "-o", (dir.path() / "s").string()});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(files_in(dir.path() / "s").size(), 3u);

    const Result bad = run_cli({"render", "--mode", "warp", "--input", (dir.path() / "in.png").string(),
                                "--use-depth", "-o", (dir.path() / "x").string()});
    EXPECT_EQ(bad.code, cli::kExitConfig);
}

TEST(Cli, ErrorExitCodes) {
    testutil::TempDir dir("cli_err");
    const Result missing = run_cli({"render", "--scene", "missing.scn", "-o", dir.path().string()});
    EXPECT_EQ(missing.code, cli::kExitIo);
    EXPECT_NE(missing.err.find("missing.scn"), std::string::npos);

    EXPECT_EQ(run_cli({"render", "--bogus-flag"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"render", "--mode", "sideways"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"render", "-o", dir.path().string()}).code, cli::kExitUsage);

    std::ofstream(dir.path() / "broken.scn") << "ambient 0.1\n\nsphere 0 0 five 1\n";
    const Result parse = run_cli({"render", "--scene", (dir.path() / "broken.scn").string(), "-o",
                                  (dir.path() / "o").string()});
    EXPECT_EQ(parse.code, cli::kExitUsage);
    EXPECT_NE(parse.err.find("broken.scn:3:"), std::string::npos);

    const auto scene = scenefile::write_example_scene(dir.path() / "scene");
    auto code = [&](std::vector<std::string> extra) {
        std::vector<std::string> args{"render", "--scene", scene.string(), "-o", (dir.path() / "o").string()};
        args.insert(args.end(), extra.begin(), extra.end());
        return run_cli(args).code;
    };
    EXPECT_EQ(code({"--size", "0x16"}), cli::kExitConfig);
    EXPECT_EQ(code({"--size", "16by16"}), cli::kExitUsage);
    EXPECT_EQ(code({"--iterations", "0"}), cli::kExitConfig);
    EXPECT_EQ(code({"--lambda", "-1", "--mapping", "depth"}), cli::kExitConfig);
    EXPECT_EQ(code({"--mapping", "affine", "--affine", "1,2,3"}), cli::kExitUsage);

    std::ofstream(dir.path() / "nocam.scn") << "env_color 0.5 0.5 0.5\n";
    EXPECT_EQ(run_cli({"render", "--scene", (dir.path() / "nocam.scn").string(), "-o", (dir.path() / "o").string()})
                  .code,
              cli::kExitConfig);
}

TEST(Cli, ExampleSceneCommand) {
    testutil::TempDir dir("cli_example");
    const Result r = run_cli({"example-scene", "-o", dir.path().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir.path() / "example.scn"));
    EXPECT_TRUE(fs::exists(dir.path() / "example_env.png"));
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

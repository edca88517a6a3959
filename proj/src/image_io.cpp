// Copyright 2026 The RCP Authors
// SPDX-License-Identifier: Apache-2.0

#include "rcp/image_io.h"

#include <png.h>

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <cerrno>
#include <string>

#include "rcp/error.h"

namespace rcp::io {

namespace {

struct FileCloser {
    void operator()(std::FILE *f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path &path, const char *mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f)
        throw Error(ErrorKind::Io, "cannot open " + path.string() + ": " + std::strerror(errno));
    return f;
}

std::uint32_t float_bits_le(float v) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    if constexpr (std::endian::native == std::endian::big)
        return __builtin_bswap32(bits);
    return bits;
}

} // namespace

void write_png(const std::filesystem::path &path, const ColorImage &image) {
    const int w = image.width();
    const int h = image.height();
    std::vector<png_byte> pixels(static_cast<std::size_t>(w) * h * 3);
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) {
            const ColorRGB &c = image.at(i, j);
            png_byte *p = pixels.data() + (static_cast<std::size_t>(j) * w + i) * 3;
            p[0] = linear_to_srgb_code(c.r);
            p[1] = linear_to_srgb_code(c.g);
            p[2] = linear_to_srgb_code(c.b);
        }

    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(w);
    png.height = static_cast<png_uint_32>(h);
    png.format = PNG_FORMAT_RGB;
    FilePtr f = open_file(path, "wb");
    if (!png_image_write_to_stdio(&png, f.get(), 0, pixels.data(), 0, nullptr))
        throw Error(ErrorKind::Io, "cannot write " + path.string() + ": " + png.message);
    if (std::fflush(f.get()) != 0)
        throw Error(ErrorKind::Io, "write failed for " + path.string());
}

ColorImage read_png(const std::filesystem::path &path) {
    FilePtr f = open_file(path, "rb");
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_stdio(&png, f.get()))
        throw Error(ErrorKind::Io, "cannot read " + path.string() + ": " + png.message);
    png.format = PNG_FORMAT_RGB;
    const int w = static_cast<int>(png.width);
    const int h = static_cast<int>(png.height);
    std::vector<png_byte> pixels(PNG_IMAGE_SIZE(png));
    const png_color black{0, 0, 0};
    if (!png_image_finish_read(&png, &black, pixels.data(), 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw Error(ErrorKind::Io, "cannot read " + path.string() + ": " + msg);
    }

    ColorImage img(w, h);
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) {
            const png_byte *p = pixels.data() + (static_cast<std::size_t>(j) * w + i) * 3;
            img.store(i, j, {srgb_code_to_linear(p[0]), srgb_code_to_linear(p[1]), srgb_code_to_linear(p[2])});
        }
    return img;
}

void write_pfm(const std::filesystem::path &path, const FloatImage &image) {
    if (image.channels != 1 && image.channels != 3)
        throw Error(ErrorKind::InvalidInput, "PFM supports 1 or 3 channels");
    if (image.data.size() != static_cast<std::size_t>(image.width) * image.height * image.channels)
        throw Error(ErrorKind::InvalidInput, "PFM data size does not match its dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    out << (image.channels == 3 ? "PF" : "Pf") << '\n' << image.width << ' ' << image.height << '\n' << "-1.0\n";
    const std::size_t row_len = static_cast<std::size_t>(image.width) * image.channels;
    std::vector<std::uint32_t> row(row_len);
    for (int j = image.height - 1; j >= 0; --j) {
        const float *src = image.data.data() + static_cast<std::size_t>(j) * row_len;
        for (std::size_t k = 0; k < row_len; ++k)
            row[k] = float_bits_le(src[k]);
        out.write(reinterpret_cast<const char *>(row.data()), static_cast<std::streamsize>(row_len * 4));
    }
    if (!out)
        throw Error(ErrorKind::Io, "write failed for " + path.string());
}

FloatImage read_pfm(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::string magic;
    FloatImage img;
    double scale = 0.0;
    in >> magic >> img.width >> img.height >> scale;
    in.get();
    if (!in || (magic != "PF" && magic != "Pf") || img.width < 1 || img.height < 1 || scale == 0.0)
        throw Error(ErrorKind::Io, path.string() + ": malformed PFM header");
    img.channels = magic == "PF" ? 3 : 1;
    const bool little = scale < 0.0;
    const std::size_t row_len = static_cast<std::size_t>(img.width) * img.channels;
    img.data.resize(row_len * img.height);
    std::vector<std::uint32_t> row(row_len);
    for (int j = img.height - 1; j >= 0; --j) {
        in.read(reinterpret_cast<char *>(row.data()), static_cast<std::streamsize>(row_len * 4));
        if (!in)
            throw Error(ErrorKind::Io, path.string() + ": truncated PFM data");
        for (std::size_t k = 0; k < row_len; ++k) {
            std::uint32_t bits = row[k];
            if (little != (std::endian::native == std::endian::little))
                bits = __builtin_bswap32(bits);
            img.data[static_cast<std::size_t>(j) * row_len + k] = std::bit_cast<float>(bits);
        }
    }
    return img;
}

FloatImage depth_image(const FrameBuffer &fb) {
    FloatImage img{fb.width(), fb.height(), 1, {}};
    img.data.reserve(fb.samples().size());
    for (const auto &s : fb.samples())
        img.data.push_back(static_cast<float>(s.depth));
    return img;
}

FloatImage normal_image(const FrameBuffer &fb) {
    FloatImage img{fb.width(), fb.height(), 3, {}};
    img.data.reserve(fb.samples().size() * 3);
    for (const auto &s : fb.samples()) {
        img.data.push_back(static_cast<float>(s.normal.x));
        img.data.push_back(static_cast<float>(s.normal.y));
        img.data.push_back(static_cast<float>(s.normal.z));
    }
    return img;
}

} // namespace rcp::io

// SPDX-License-Identifier: Apache-2.0
// ----------------------------------------------------------------------------
// Copyright 2026 The texinr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at:
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.
// ----------------------------------------------------------------------------

#include "texinr/image.hpp"

#include "texinr/error.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>

#include <jpeglib.h>
#include <png.h>

namespace texinr {

Image::Image(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), pixels_(width * height * channels, fill)
{
}

Image Image::filled(std::size_t width, std::size_t height, std::array<double, 3> rgb)
{
    Image img(width, height);
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        for (std::size_t c = 0; c < channels; ++c)
            img.pixels_[i * channels + c] = rgb[c];
    return img;
}

Image Image::crop(std::size_t x0, std::size_t y0, std::size_t w, std::size_t h) const
{
    if (x0 + w > width_ || y0 + h > height_)
        throw ShapeError("crop rectangle exceeds image bounds");
    Image out(w, h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x)
            for (std::size_t c = 0; c < channels; ++c)
                out.at(x, y, c) = at(x0 + x, y0 + y, c);
    return out;
}

void Image::clamp01()
{
    for (double& p : pixels_)
        p = std::clamp(p, 0.0, 1.0);
}

std::uint8_t quantize8(double v)
{
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

namespace {

Image from_bytes(std::size_t w, std::size_t h, const std::vector<unsigned char>& bytes, std::size_t stride_ch)
{
    Image img(w, h);
    for (std::size_t i = 0; i < w * h; ++i)
        for (std::size_t c = 0; c < Image::channels; ++c)
            img.values()[i * Image::channels + c] = bytes[i * stride_ch + c] / 255.0;
    return img;
}

Image load_png(const std::filesystem::path& path)
{
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str()))
        throw IoError("cannot read PNG '" + path.string() + "': " + png.message);
    png.format = PNG_FORMAT_RGBA;
    std::vector<unsigned char> buf(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buf.data(), 0, nullptr)) {
        png_image_free(&png);
        throw IoError("cannot decode PNG '" + path.string() + "': " + png.message);
    }
    return from_bytes(png.width, png.height, buf, 4);
}

struct JpegErrorManager {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo)
{
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

Image load_jpeg(const std::filesystem::path& path)
{
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(std::fopen(path.c_str(), "rb"), &std::fclose);
    if (!file)
        throw IoError("cannot open '" + path.string() + "'");

    jpeg_decompress_struct cinfo{};
    JpegErrorManager err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    std::vector<unsigned char> buf;
    std::size_t w = 0, h = 0;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError("cannot decode JPEG '" + path.string() + "': " + err.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, file.get());
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    w = cinfo.output_width;
    h = cinfo.output_height;
    buf.resize(w * h * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = buf.data() + std::size_t(cinfo.output_scanline) * w * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return from_bytes(w, h, buf, 3);
}

// Triangle-filter weights for one axis: contributions[x] lists (source index, weight).
std::vector<std::vector<std::pair<std::size_t, double>>> axis_weights(std::size_t in, std::size_t out)
{
    const double scale = static_cast<double>(in) / static_cast<double>(out);
    const double support = std::max(scale, 1.0);
    std::vector<std::vector<std::pair<std::size_t, double>>> weights(out);
    for (std::size_t x = 0; x < out; ++x) {
        const double center = (static_cast<double>(x) + 0.5) * scale;
        const auto lo = static_cast<long>(std::floor(center - support));
        const auto hi = static_cast<long>(std::ceil(center + support));
        double total = 0.0;
        for (long j = std::max(lo, 0L); j < std::min(hi, static_cast<long>(in)); ++j) {
            const double dist = std::abs((static_cast<double>(j) + 0.5 - center) / support);
            const double w = 1.0 - dist;
            if (w > 0.0) {
                weights[x].emplace_back(static_cast<std::size_t>(j), w);
                total += w;
            }
        }
        for (auto& [j, w] : weights[x])
            w /= total;
    }
    return weights;
}

} // namespace

Image load_image(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    unsigned char magic[8] = {};
    in.read(reinterpret_cast<char*>(magic), sizeof magic);
    if (in.gcount() >= 8 && png_sig_cmp(magic, 0, 8) == 0)
        return load_png(path);
    if (in.gcount() >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 && magic[2] == 0xFF)
        return load_jpeg(path);
    throw IoError("'" + path.string() + "' is neither PNG nor JPEG");
}

void save_png(const Image& img, const std::filesystem::path& path)
{
    if (img.empty())
        throw IoError("refusing to write an empty image to '" + path.string() + "'");
    std::vector<unsigned char> buf(img.values().size());
    std::transform(img.values().begin(), img.values().end(), buf.begin(), quantize8);

    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(img.width());
    png.height = static_cast<png_uint_32>(img.height());
    png.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png, path.c_str(), 0, buf.data(), 0, nullptr))
        throw IoError("cannot write PNG '" + path.string() + "': " + png.message);
}

Image resize_bilinear(const Image& src, std::size_t width, std::size_t height)
{
    if (width == 0 || height == 0 || src.empty())
        throw ShapeError("resize to or from an empty image");
    const auto wx = axis_weights(src.width(), width);
    const auto wy = axis_weights(src.height(), height);

    Image tmp(width, src.height());
    for (std::size_t y = 0; y < src.height(); ++y)
        for (std::size_t x = 0; x < width; ++x)
            for (std::size_t c = 0; c < Image::channels; ++c) {
                double acc = 0.0;
                for (const auto& [j, w] : wx[x])
                    acc += w * src.at(j, y, c);
                tmp.at(x, y, c) = acc;
            }

    Image out(width, height);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x)
            for (std::size_t c = 0; c < Image::channels; ++c) {
                double acc = 0.0;
                for (const auto& [j, w] : wy[y])
                    acc += w * tmp.at(x, j, c);
                out.at(x, y, c) = acc;
            }
    out.clamp01();
    return out;
}

std::size_t mip_dim(std::size_t base, std::size_t level)
{
    const std::size_t div = std::size_t{1} << level;
    return (base + div - 1) / div;
}

MipmapPyramid build_pyramid(const Image& base, std::size_t levels)
{
    if (levels == 0)
        throw ConfigError("a pyramid needs at least one level");
    const std::size_t min_dim = std::size_t{1} << (levels - 1);
    if (base.width() < min_dim || base.height() < min_dim)
        throw ConfigError("image " + std::to_string(base.width()) + "x" + std::to_string(base.height()) +
                          " is too small for " + std::to_string(levels) + " mip levels");
    MipmapPyramid pyr;
    pyr.levels.push_back(base);
    for (std::size_t l = 1; l < levels; ++l)
        pyr.levels.push_back(resize_bilinear(base, mip_dim(base.width(), l), mip_dim(base.height(), l)));
    return pyr;
}

Image pack_atlas(const MipmapPyramid& pyramid)
{
    constexpr std::size_t gutter = 2;
    std::size_t width = 0, height = 0;
    for (std::size_t l = 0; l < pyramid.levels.size(); ++l) {
        width += pyramid.levels[l].width() + (l ? gutter : 0);
        height = std::max(height, pyramid.levels[l].height());
    }
    Image atlas(width, height, 0.0);
    std::size_t x0 = 0;
    for (const Image& level : pyramid.levels) {
        for (std::size_t y = 0; y < level.height(); ++y)
            for (std::size_t x = 0; x < level.width(); ++x)
                for (std::size_t c = 0; c < Image::channels; ++c)
                    atlas.at(x0 + x, y, c) = level.at(x, y, c);
        x0 += level.width() + gutter;
    }
    return atlas;
}

double level_t(std::size_t level, std::size_t level_count)
{
    if (level_count <= 1)
        return 0.0;
    return static_cast<double>(level) / static_cast<double>(level_count - 1);
}

namespace {

void append_samples(const Image& img, std::optional<double> t, std::vector<TrainingSample>& out)
{
    const double w = static_cast<double>(img.width()), h = static_cast<double>(img.height());
    for (std::size_t y = 0; y < img.height(); ++y)
        for (std::size_t x = 0; x < img.width(); ++x) {
            TrainingSample s;
            s.u = (static_cast<double>(x) + 0.5) / w;
            s.v = (static_cast<double>(y) + 0.5) / h;
            s.t = t;
            for (std::size_t c = 0; c < Image::channels; ++c)
                s.rgb[c] = img.at(x, y, c);
            out.push_back(s);
        }
}

} // namespace

std::vector<TrainingSample> build_dataset(const Image& img)
{
    std::vector<TrainingSample> out;
    out.reserve(img.pixel_count());
    append_samples(img, std::nullopt, out);
    return out;
}

std::vector<TrainingSample> build_mipmap_dataset(const MipmapPyramid& pyramid)
{
    std::vector<TrainingSample> out;
    std::size_t total = 0;
    for (const Image& level : pyramid.levels)
        total += level.pixel_count();
    out.reserve(total);
    for (std::size_t l = 0; l < pyramid.levels.size(); ++l)
        append_samples(pyramid.levels[l], level_t(l, pyramid.level_count()), out);
    return out;
}

DatasetMatrices to_matrices(const std::vector<TrainingSample>& samples)
{
    const bool with_t = !samples.empty() && samples.front().t.has_value();
    const std::size_t d = with_t ? 3 : 2;
    DatasetMatrices m{Matrix(samples.size(), d), Matrix(samples.size(), 3)};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const TrainingSample& s = samples[i];
        if (s.t.has_value() != with_t)
            throw ShapeError("dataset mixes samples with and without t");
        m.coords(i, 0) = s.u;
        m.coords(i, 1) = s.v;
        if (with_t)
            m.coords(i, 2) = *s.t;
        for (std::size_t c = 0; c < 3; ++c)
            m.targets(i, c) = s.rgb[c];
    }
    return m;
}

} // namespace texinr

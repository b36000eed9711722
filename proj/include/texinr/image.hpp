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

#pragma once

#include "texinr/tensor.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

namespace texinr {

/// RGB image with channel values in [0,1], stored row-major, interleaved.
class Image {
public:
    static constexpr std::size_t channels = 3;

    Image() = default;
    Image(std::size_t width, std::size_t height, double fill = 0.0);
    static Image filled(std::size_t width, std::size_t height, std::array<double, 3> rgb);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t pixel_count() const { return width_ * height_; }
    bool empty() const { return pixels_.empty(); }

    double& at(std::size_t x, std::size_t y, std::size_t c) { return pixels_[(y * width_ + x) * channels + c]; }
    double at(std::size_t x, std::size_t y, std::size_t c) const { return pixels_[(y * width_ + x) * channels + c]; }

    std::span<double> values() { return pixels_; }
    std::span<const double> values() const { return pixels_; }

    /// Sub-image; the rectangle must lie inside the image.
    Image crop(std::size_t x0, std::size_t y0, std::size_t w, std::size_t h) const;

    void clamp01();

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> pixels_;
};

/// Reads an 8-bit PNG or JPEG, normalizing by 1/255. Grayscale sources are
/// replicated to three channels; alpha is dropped.
Image load_image(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG, quantizing round(clamp(p) * 255).
void save_png(const Image& img, const std::filesystem::path& path);

std::uint8_t quantize8(double v);

/// Separable triangle-filter resampling whose support widens with the
/// reduction factor, so every source pixel contributes when downsampling.
Image resize_bilinear(const Image& src, std::size_t width, std::size_t height);

struct MipmapPyramid {
    std::vector<Image> levels; // levels[0] is the base

    std::size_t level_count() const { return levels.size(); }
};

inline constexpr std::size_t kDefaultMipLevels = 6;

/// Dimension of level l for a base dimension: ceil(base / 2^l).
std::size_t mip_dim(std::size_t base, std::size_t level);

/// Each level is resampled directly from the base image. Throws ConfigError
/// if levels == 0 or the base is smaller than 2^(levels-1) on either axis.
MipmapPyramid build_pyramid(const Image& base, std::size_t levels = kDefaultMipLevels);

/// Levels packed left to right, top aligned, separated by a 2px black gutter.
Image pack_atlas(const MipmapPyramid& pyramid);

/// Normalized level-of-detail coordinate for level l of n: l / (n - 1).
double level_t(std::size_t level, std::size_t level_count);

struct TrainingSample {
    double u = 0.0;
    double v = 0.0;
    std::optional<double> t;
    std::array<double, 3> rgb{};
};

/// One sample per pixel at pixel centers u = (x+0.5)/W, v = (y+0.5)/H, row-major.
std::vector<TrainingSample> build_dataset(const Image& img);

/// Level-major concatenation of every level's samples with t = l/(levels-1).
std::vector<TrainingSample> build_mipmap_dataset(const MipmapPyramid& pyramid);

/// Coordinates (N x 2 or N x 3) and targets (N x 3) for training.
struct DatasetMatrices {
    Matrix coords;
    Matrix targets;
};
DatasetMatrices to_matrices(const std::vector<TrainingSample>& samples);

} // namespace texinr

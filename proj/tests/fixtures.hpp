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

// Test-only helpers: procedural textures, random data, and scalar reference
// implementations that do not share code with the library kernels.

#include "texinr/image.hpp"
#include "texinr/network.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace texinr::testing {

inline Image random_image(std::size_t w, std::size_t h, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Image img(w, h);
    for (double& v : img.values())
        v = dist(rng);
    return img;
}

/// Square checkerboard with `periods` full dark/light periods across the width.
inline Image checkerboard(std::size_t size, std::size_t periods)
{
    Image img(size, size);
    const std::size_t cell = size / (2 * periods);
    for (std::size_t y = 0; y < size; ++y)
        for (std::size_t x = 0; x < size; ++x) {
            const double v = ((x / cell + y / cell) % 2) ? 1.0 : 0.0;
            for (std::size_t c = 0; c < 3; ++c)
                img.at(x, y, c) = v;
        }
    return img;
}

/// Woven-looking test texture: two crossing sinusoidal bands with a colour
/// gradient and smooth value noise. Deterministic.
inline Image woven_texture(std::size_t w, std::size_t h)
{
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    constexpr std::size_t g = 5;
    double lattice[g][g];
    for (auto& row : lattice)
        for (double& v : row)
            v = dist(rng);

    Image img(w, h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            const double u = (x + 0.5) / w, v = (y + 0.5) / h;
            const double gx = u * (g - 1), gy = v * (g - 1);
            const auto ix = std::min<std::size_t>(static_cast<std::size_t>(gx), g - 2);
            const auto iy = std::min<std::size_t>(static_cast<std::size_t>(gy), g - 2);
            const double fx = gx - ix, fy = gy - iy;
            const double noise = (1 - fx) * (1 - fy) * lattice[iy][ix] + fx * (1 - fy) * lattice[iy][ix + 1] +
                                 (1 - fx) * fy * lattice[iy + 1][ix] + fx * fy * lattice[iy + 1][ix + 1];
            const double warp = 0.5 + 0.5 * std::sin(2 * std::numbers::pi * 3 * u);
            const double weft = 0.5 + 0.5 * std::sin(2 * std::numbers::pi * 2 * (v + 0.1 * u));
            img.at(x, y, 0) = 0.15 + 0.6 * warp * (0.6 + 0.4 * noise);
            img.at(x, y, 1) = 0.2 + 0.5 * weft * noise;
            img.at(x, y, 2) = 0.1 + 0.35 * (warp + weft) * 0.5 + 0.2 * u;
        }
    return img;
}

inline Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(r, c);
    for (double& v : m.values())
        v = dist(rng);
    return m;
}

/// Scalar reference evaluation of one sample: explicit Fourier/identity
/// encoding and naive layer loops. Hash models are not supported here.
inline std::vector<double> reference_forward(const InrModel& m, const std::vector<double>& coord)
{
    std::vector<double> a;
    for (double c : coord)
        a.push_back(std::min(1.0, std::max(0.0, c)));
    if (const auto* f = std::get_if<FourierEncoding>(&m.spec.encoder)) {
        const std::vector<double> raw = a;
        for (double fi : f->frequencies)
            for (double c : raw)
                a.push_back(std::sin(2 * std::numbers::pi * fi * c));
        for (double fi : f->frequencies)
            for (double c : raw)
                a.push_back(std::cos(2 * std::numbers::pi * fi * c));
    }
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        const Layer& layer = m.layers[l];
        std::vector<double> z(layer.W.cols(), 0.0);
        for (std::size_t j = 0; j < layer.W.cols(); ++j) {
            double s = layer.b[j];
            for (std::size_t k = 0; k < layer.W.rows(); ++k)
                s += a[k] * layer.W(k, j);
            z[j] = s;
        }
        if (l + 1 < m.layers.size()) {
            for (double& v : z) {
                switch (m.spec.activation) {
                case ActivationKind::identity: break;
                case ActivationKind::relu: v = v > 0 ? v : 0; break;
                case ActivationKind::sine: v = std::sin(m.spec.omega0 * v); break;
                }
            }
        }
        a = std::move(z);
    }
    return a;
}

/// Mean squared error of the reference forward against targets.
inline double reference_mse(const InrModel& m, const Matrix& coords, const Matrix& targets)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < coords.rows(); ++i) {
        const auto row = coords.row(i);
        const auto out = reference_forward(m, std::vector<double>(row.begin(), row.end()));
        for (std::size_t c = 0; c < out.size(); ++c) {
            const double e = out[c] - targets(i, c);
            sum += e * e;
        }
    }
    return sum / static_cast<double>(coords.rows() * targets.cols());
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("texinr_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace texinr::testing

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

#include "texinr/encoding.hpp"

#include "texinr/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace texinr {

namespace {

constexpr std::array<std::uint32_t, 3> kHashPrimes = {1u, 2654435761u, 805459861u};
constexpr std::size_t kMaxHashDim = 3;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double clamp01(double x)
{
    return std::clamp(x, 0.0, 1.0);
}

struct Corner {
    std::size_t index; // into the level's slice of the table (entry, not feature)
    double weight;
};

// Corners of the grid cell containing `pos` at one level, with multilinear weights.
std::size_t cell_corners(const HashEncoding& cfg, std::uint32_t level, std::span<const double> pos,
                         std::array<Corner, 1u << kMaxHashDim>& out)
{
    const std::uint32_t res = cfg.resolution(level);
    const std::size_t d = pos.size();
    std::array<std::uint32_t, kMaxHashDim> cell{};
    std::array<double, kMaxHashDim> frac{};
    for (std::size_t i = 0; i < d; ++i) {
        const double p = clamp01(pos[i]) * res;
        auto c = static_cast<std::uint32_t>(std::floor(p));
        if (c >= res)
            c = res - 1;
        cell[i] = c;
        frac[i] = p - c;
    }
    const std::size_t n = std::size_t{1} << d;
    for (std::size_t corner = 0; corner < n; ++corner) {
        std::uint32_t h = 0;
        double w = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const bool upper = (corner >> i) & 1u;
            h ^= (cell[i] + (upper ? 1u : 0u)) * kHashPrimes[i];
            w *= upper ? frac[i] : 1.0 - frac[i];
        }
        out[corner] = {h & (cfg.table_size - 1), w};
    }
    return n;
}

} // namespace

FourierEncoding FourierEncoding::octaves(std::size_t n_f)
{
    FourierEncoding f;
    for (std::size_t i = 0; i < n_f; ++i)
        f.frequencies.push_back(std::ldexp(1.0, static_cast<int>(i)));
    return f;
}

std::uint32_t HashEncoding::resolution(std::uint32_t level) const
{
    return static_cast<std::uint32_t>(std::floor(base_resolution * std::pow(growth, level)));
}

std::string encoder_name(const EncoderConfig& cfg)
{
    return std::visit(overloaded{[](const IdentityEncoding&) { return std::string("identity"); },
                                 [](const FourierEncoding&) { return std::string("fourier"); },
                                 [](const HashEncoding&) { return std::string("hash"); }},
                      cfg);
}

void validate(const EncoderConfig& cfg)
{
    if (const auto* f = std::get_if<FourierEncoding>(&cfg)) {
        if (f->frequencies.empty())
            throw ConfigError("fourier encoding needs at least one frequency");
        for (std::size_t i = 0; i < f->frequencies.size(); ++i) {
            const double fi = f->frequencies[i];
            if (!(fi > 0.0) || !std::isfinite(fi))
                throw ConfigError("fourier frequencies must be positive and finite");
            if (i > 0 && !(fi > f->frequencies[i - 1]))
                throw ConfigError("fourier frequencies must be strictly increasing");
        }
    }
    else if (const auto* h = std::get_if<HashEncoding>(&cfg)) {
        if (h->table_size == 0 || (h->table_size & (h->table_size - 1)) != 0)
            throw ConfigError("hash table size must be a power of two, got " + std::to_string(h->table_size));
        if (h->levels == 0 || h->features_per_entry == 0 || h->base_resolution == 0)
            throw ConfigError("hash levels, features per entry and base resolution must be positive");
        if (!(h->growth >= 1.0) || !std::isfinite(h->growth))
            throw ConfigError("hash growth factor must be >= 1");
    }
}

std::size_t encoded_dim(const EncoderConfig& cfg, std::size_t input_dim)
{
    return std::visit(
        overloaded{[&](const IdentityEncoding&) { return input_dim; },
                   [&](const FourierEncoding& f) { return input_dim + 2 * input_dim * f.frequencies.size(); },
                   [&](const HashEncoding& h) {
                       return input_dim + std::size_t(h.levels) * h.features_per_entry;
                   }},
        cfg);
}

Matrix encode(const EncoderConfig& cfg, const Matrix& coords, std::span<const double> hash_table)
{
    validate(cfg);
    const std::size_t n = coords.rows(), d = coords.cols();
    Matrix out(n, encoded_dim(cfg, d));

    for (std::size_t i = 0; i < n; ++i) {
        auto src = coords.row(i);
        auto dst = out.row(i);
        for (std::size_t c = 0; c < d; ++c)
            dst[c] = clamp01(src[c]);
    }

    if (const auto* f = std::get_if<FourierEncoding>(&cfg)) {
        const std::size_t nf = f->frequencies.size();
        for (std::size_t i = 0; i < n; ++i) {
            auto dst = out.row(i);
            for (std::size_t k = 0; k < nf; ++k) {
                const double w = 2.0 * std::numbers::pi * f->frequencies[k];
                for (std::size_t c = 0; c < d; ++c) {
                    const double arg = w * dst[c];
                    dst[d + k * d + c] = std::sin(arg);
                    dst[d + nf * d + k * d + c] = std::cos(arg);
                }
            }
        }
    }
    else if (const auto* h = std::get_if<HashEncoding>(&cfg)) {
        if (d > kMaxHashDim)
            throw ConfigError("hash encoding supports at most 3 input dimensions");
        if (hash_table.size() != h->table_entries())
            throw ShapeError("hash table holds " + std::to_string(hash_table.size()) + " values, expected " +
                             std::to_string(h->table_entries()));
        const std::size_t F = h->features_per_entry;
        std::array<Corner, 1u << kMaxHashDim> corners{};
        for (std::size_t i = 0; i < n; ++i) {
            auto dst = out.row(i);
            const auto pos = std::span<const double>(dst.data(), d);
            for (std::uint32_t l = 0; l < h->levels; ++l) {
                const std::size_t nc = cell_corners(*h, l, pos, corners);
                const double* level_table = hash_table.data() + std::size_t(l) * h->table_size * F;
                double* feat = dst.data() + d + l * F;
                for (std::size_t c = 0; c < nc; ++c) {
                    const double* entry = level_table + corners[c].index * F;
                    for (std::size_t k = 0; k < F; ++k)
                        feat[k] += corners[c].weight * entry[k];
                }
            }
        }
    }
    return out;
}

void hash_encode_backward(const HashEncoding& cfg, const Matrix& coords, const Matrix& encoded_grad,
                          std::span<double> table_grad)
{
    const std::size_t n = coords.rows(), d = coords.cols();
    if (encoded_grad.rows() != n || encoded_grad.cols() != encoded_dim(cfg, d))
        throw ShapeError("hash backward: gradient " + encoded_grad.shape_string() + " does not match coords " +
                         coords.shape_string());
    if (table_grad.size() != cfg.table_entries())
        throw ShapeError("hash backward: table gradient has wrong size");

    const std::size_t F = cfg.features_per_entry;
    std::array<Corner, 1u << kMaxHashDim> corners{};
    for (std::size_t i = 0; i < n; ++i) {
        const auto pos = coords.row(i);
        const auto g = encoded_grad.row(i);
        for (std::uint32_t l = 0; l < cfg.levels; ++l) {
            const std::size_t nc = cell_corners(cfg, l, pos, corners);
            double* level_grad = table_grad.data() + std::size_t(l) * cfg.table_size * F;
            const double* feat_grad = g.data() + d + l * F;
            for (std::size_t c = 0; c < nc; ++c) {
                double* entry = level_grad + corners[c].index * F;
                for (std::size_t k = 0; k < F; ++k)
                    entry[k] += corners[c].weight * feat_grad[k];
            }
        }
    }
}

} // namespace texinr

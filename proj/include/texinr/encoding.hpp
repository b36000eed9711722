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

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace texinr {

struct IdentityEncoding {
    friend bool operator==(const IdentityEncoding&, const IdentityEncoding&) = default;
};

/// [v, sin(2 pi f_1 v) .. sin(2 pi f_n v), cos(2 pi f_1 v) .. cos(2 pi f_n v)]
/// Each sin/cos block holds one value per input coordinate.
struct FourierEncoding {
    std::vector<double> frequencies;

    /// Octave bands 1, 2, 4, ..., 2^(n-1).
    static FourierEncoding octaves(std::size_t n_f = 8);

    friend bool operator==(const FourierEncoding&, const FourierEncoding&) = default;
};

/// Multiresolution hash grid. Level l has resolution floor(base * growth^l).
/// The encoded vector is the raw coordinates followed by the interpolated
/// features of every level.
struct HashEncoding {
    std::uint32_t levels = 8;
    std::uint32_t table_size = 1u << 12;
    std::uint32_t features_per_entry = 2;
    std::uint32_t base_resolution = 4;
    double growth = 1.5;

    std::size_t table_entries() const
    {
        return std::size_t(levels) * table_size * features_per_entry;
    }
    std::uint32_t resolution(std::uint32_t level) const;

    friend bool operator==(const HashEncoding&, const HashEncoding&) = default;
};

using EncoderConfig = std::variant<IdentityEncoding, FourierEncoding, HashEncoding>;

std::string encoder_name(const EncoderConfig& cfg);

/// Throws ConfigError for an empty or non-increasing frequency list, a hash
/// table size that is not a power of two, or zero-sized hash parameters.
void validate(const EncoderConfig& cfg);

std::size_t encoded_dim(const EncoderConfig& cfg, std::size_t input_dim);

/// Maps a batch of coordinates (one row per sample) through the encoder.
/// Coordinates are clamped to [0,1] first. hash_table is only read by the
/// hash variant and must then hold cfg.table_entries() values.
Matrix encode(const EncoderConfig& cfg, const Matrix& coords, std::span<const double> hash_table = {});

/// Accumulates d loss / d table into table_grad given d loss / d encoded.
void hash_encode_backward(const HashEncoding& cfg, const Matrix& coords, const Matrix& encoded_grad,
                          std::span<double> table_grad);

} // namespace texinr

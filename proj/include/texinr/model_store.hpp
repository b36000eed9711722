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

#include "texinr/network.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace texinr {

// TINR model file, all integers and floats little-endian:
//
//   offset  size  field
//   0       4     magic "TINR"
//   4       2     u16 format version (= 1)
//   6       1     u8  input_dim (2 or 3)
//   7       1     u8  activation (0 identity, 1 relu, 2 sine)
//   8       4     u32 hidden_width
//   12      1     u8  hidden_count
//   13      1     u8  output_dim (3)
//   14      8     f64 omega0
//   22      1     u8  encoder (0 identity, 1 fourier, 2 hash)
//   23      ...   encoder block
//                   fourier: u16 n_f, then n_f x f64 frequencies
//                   hash:    u32 levels, u32 table_size, u32 features_per_entry,
//                            u32 base_resolution, f64 growth
//   ...     4     u32 param_count
//   ...     4*n   f32 payload: per layer W row-major then b, then hash table
//   ...     4     u32 CRC-32 (zlib polynomial) of every preceding byte

inline constexpr std::uint16_t kTinrVersion = 1;

std::vector<std::uint8_t> serialize(const InrModel& model);

/// Throws BadMagicError, VersionError, TruncatedError, CrcError or
/// FormatError depending on what is wrong with the bytes.
InrModel deserialize(const std::vector<std::uint8_t>& bytes);

/// Writes atomically via a temporary file and rename. Rejects models without
/// hidden layers and models with non-finite parameters.
void save_model(const InrModel& model, const std::filesystem::path& path);

InrModel load_model(const std::filesystem::path& path);

/// Header bytes before the payload for this spec.
std::size_t header_size(const NetworkSpec& spec);

/// 32 * param_count of the stored model: payload bits only.
std::uint64_t asset_size_bits(const std::filesystem::path& path);

} // namespace texinr

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

#include "fixtures.hpp"

#include "texinr/error.hpp"
#include "texinr/model_store.hpp"

#include <doctest.h>

#include <fstream>

using namespace texinr;
using namespace texinr::testing;

namespace {

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("round trip is bit-identical to the float32 model")
{
    for (Architecture arch : {Architecture::mlp, Architecture::siren, Architecture::fourier, Architecture::hash}) {
        const InrModel m = init(make_spec(arch, 16, 2), 21);
        const InrModel back = deserialize(serialize(m));
        CAPTURE(to_string(arch));
        CHECK(back == quantize32(m));
    }
}

TEST_CASE("re-saving a loaded model reproduces the same bytes")
{
    const auto dir = temp_dir("store_resave");
    const InrModel m = init(make_spec(Architecture::fourier, 32, 1), 2);
    save_model(m, dir / "a.tinr");
    save_model(load_model(dir / "a.tinr"), dir / "b.tinr");
    CHECK(read_bytes(dir / "a.tinr") == read_bytes(dir / "b.tinr"));
}

TEST_CASE("file size and asset bits for the 128x1 mlp")
{
    const auto dir = temp_dir("store_size");
    const InrModel m = init(make_spec(Architecture::mlp, 128, 1), 1);
    save_model(m, dir / "m.tinr");
    CHECK(header_size(m.spec) == 27);
    CHECK(std::filesystem::file_size(dir / "m.tinr") == header_size(m.spec) + 3084 + 4);
    CHECK(asset_size_bits(dir / "m.tinr") == 24672);
}

TEST_CASE("corruption is detected with a specific error")
{
    const InrModel m = init(make_spec(Architecture::siren, 8, 1), 3);
    const auto good = serialize(m);

    auto flipped = good;
    flipped[header_size(m.spec) + 5] ^= 0x10;
    CHECK_THROWS_AS(deserialize(flipped), CrcError);

    auto magic = good;
    magic[0] = 'X';
    CHECK_THROWS_AS(deserialize(magic), BadMagicError);

    auto version = good;
    version[4] = 9;
    CHECK_THROWS_AS(deserialize(version), VersionError);

    for (std::size_t cut : {std::size_t{3}, std::size_t{10}, good.size() - 1}) {
        const std::vector<std::uint8_t> truncated(good.begin(), good.begin() + static_cast<std::ptrdiff_t>(cut));
        CHECK_THROWS_AS(deserialize(truncated), TruncatedError);
    }

    auto trailing = good;
    trailing.push_back(0);
    CHECK_THROWS_AS(deserialize(trailing), FormatError);
}

TEST_CASE("invalid models are refused")
{
    const auto dir = temp_dir("store_invalid");
    NetworkSpec spec;
    spec.hidden_count = 0;
    CHECK_THROWS_AS(save_model(zeros(spec), dir / "z.tinr"), ConfigError);
    InrModel m = init(make_spec(Architecture::mlp, 4, 1), 0);
    m.layers[0].W(0, 0) = std::nan("");
    CHECK_THROWS_AS(save_model(m, dir / "n.tinr"), NumericError);
    CHECK(!std::filesystem::exists(dir / "n.tinr"));
    CHECK_THROWS_AS(load_model(dir / "missing.tinr"), IoError);
}

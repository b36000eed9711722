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

#include "texinr/model_store.hpp"

#include "texinr/error.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <zlib.h>

namespace texinr {

namespace {

constexpr char kMagic[4] = {'T', 'I', 'N', 'R'};

class Writer {
public:
    void u8(std::uint8_t v) { bytes.push_back(v); }
    void u16(std::uint16_t v) { le(v, 2); }
    void u32(std::uint32_t v) { le(v, 4); }
    void f32(float v) { le(std::bit_cast<std::uint32_t>(v), 4); }
    void f64(double v) { le(std::bit_cast<std::uint64_t>(v), 8); }

    std::vector<std::uint8_t> bytes;

private:
    void le(std::uint64_t v, int n)
    {
        for (int i = 0; i < n; ++i)
            bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
};

class Reader {
public:
    Reader(const std::vector<std::uint8_t>& bytes, std::size_t limit) : bytes_(bytes), limit_(limit) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
    float f32() { return std::bit_cast<float>(u32()); }
    double f64() { return std::bit_cast<double>(le(8)); }
    std::size_t pos() const { return pos_; }

private:
    std::uint64_t le(int n)
    {
        if (pos_ + n > limit_)
            throw TruncatedError("model file ends inside the header");
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i)
            v |= std::uint64_t(bytes_[pos_ + i]) << (8 * i);
        pos_ += n;
        return v;
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t limit_;
    std::size_t pos_ = 0;
};

std::uint8_t activation_code(ActivationKind k)
{
    switch (k) {
    case ActivationKind::identity: return 0;
    case ActivationKind::relu: return 1;
    case ActivationKind::sine: return 2;
    }
    return 0xFF;
}

ActivationKind activation_of_code(std::uint8_t c)
{
    switch (c) {
    case 0: return ActivationKind::identity;
    case 1: return ActivationKind::relu;
    case 2: return ActivationKind::sine;
    default: throw FormatError("unknown activation code " + std::to_string(c));
    }
}

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t len)
{
    return static_cast<std::uint32_t>(::crc32(::crc32(0L, Z_NULL, 0), data, static_cast<uInt>(len)));
}

void write_header(Writer& w, const NetworkSpec& spec)
{
    w.bytes.insert(w.bytes.end(), std::begin(kMagic), std::end(kMagic));
    w.u16(kTinrVersion);
    w.u8(static_cast<std::uint8_t>(spec.input_dim));
    w.u8(activation_code(spec.activation));
    w.u32(static_cast<std::uint32_t>(spec.hidden_width));
    w.u8(static_cast<std::uint8_t>(spec.hidden_count));
    w.u8(static_cast<std::uint8_t>(spec.output_dim));
    w.f64(spec.omega0);
    if (std::holds_alternative<IdentityEncoding>(spec.encoder)) {
        w.u8(0);
    }
    else if (const auto* f = std::get_if<FourierEncoding>(&spec.encoder)) {
        w.u8(1);
        w.u16(static_cast<std::uint16_t>(f->frequencies.size()));
        for (double fi : f->frequencies)
            w.f64(fi);
    }
    else {
        const auto& h = std::get<HashEncoding>(spec.encoder);
        w.u8(2);
        w.u32(h.levels);
        w.u32(h.table_size);
        w.u32(h.features_per_entry);
        w.u32(h.base_resolution);
        w.f64(h.growth);
    }
    w.u32(static_cast<std::uint32_t>(param_count(spec)));
}

} // namespace

std::size_t header_size(const NetworkSpec& spec)
{
    Writer w;
    write_header(w, spec);
    return w.bytes.size();
}

std::vector<std::uint8_t> serialize(const InrModel& model)
{
    validate(model.spec);
    if (model.spec.hidden_count == 0)
        throw ConfigError("models without hidden layers cannot be stored");
    if (model.spec.hidden_count > 255 || model.spec.hidden_width > 0xFFFFFFFFu)
        throw ConfigError("network too large for the TINR header");

    Writer w;
    write_header(w, model.spec);
    std::size_t written = 0;
    for (const auto span : parameter_spans(model))
        for (double v : span) {
            if (!std::isfinite(v))
                throw NumericError("refusing to store a model with non-finite parameters");
            w.f32(static_cast<float>(v));
            ++written;
        }
    if (written != param_count(model.spec))
        throw ShapeError("model parameters do not match its spec");
    w.u32(crc32_of(w.bytes.data(), w.bytes.size()));
    return std::move(w.bytes);
}

InrModel deserialize(const std::vector<std::uint8_t>& bytes)
{
    if (bytes.size() < 6)
        throw TruncatedError("model file is shorter than its magic and version");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw BadMagicError("not a TINR model (bad magic)");

    Reader r(bytes, bytes.size());
    r.u32();
    const std::uint16_t version = r.u16();
    if (version != kTinrVersion)
        throw VersionError("unsupported TINR version " + std::to_string(version) + " (expected " +
                           std::to_string(kTinrVersion) + ")");

    NetworkSpec spec;
    spec.input_dim = r.u8();
    spec.activation = activation_of_code(r.u8());
    spec.hidden_width = r.u32();
    spec.hidden_count = r.u8();
    spec.output_dim = r.u8();
    spec.omega0 = r.f64();
    switch (r.u8()) {
    case 0:
        spec.encoder = IdentityEncoding{};
        break;
    case 1: {
        FourierEncoding f;
        const std::uint16_t n = r.u16();
        for (std::uint16_t i = 0; i < n; ++i)
            f.frequencies.push_back(r.f64());
        spec.encoder = std::move(f);
        break;
    }
    case 2: {
        HashEncoding h;
        h.levels = r.u32();
        h.table_size = r.u32();
        h.features_per_entry = r.u32();
        h.base_resolution = r.u32();
        h.growth = r.f64();
        spec.encoder = h;
        break;
    }
    default:
        throw FormatError("unknown encoder code");
    }
    const std::uint32_t stored_count = r.u32();

    const std::size_t expected = r.pos() + std::size_t(stored_count) * 4 + 4;
    if (bytes.size() < expected)
        throw TruncatedError("model payload truncated: " + std::to_string(bytes.size()) + " bytes, expected " +
                             std::to_string(expected));
    if (bytes.size() > expected)
        throw FormatError("trailing bytes after model payload");

    const std::size_t body = bytes.size() - 4;
    std::uint32_t stored_crc = 0;
    for (int i = 0; i < 4; ++i)
        stored_crc |= std::uint32_t(bytes[body + i]) << (8 * i);
    if (crc32_of(bytes.data(), body) != stored_crc)
        throw CrcError("model file CRC mismatch");

    try {
        validate(spec);
    }
    catch (const ConfigError& e) {
        throw FormatError(std::string("invalid network spec in model file: ") + e.what());
    }
    if (param_count(spec) != stored_count)
        throw FormatError("stored parameter count does not match the network spec");

    InrModel model = zeros(spec);
    Reader payload(bytes, body);
    for (std::size_t i = 0; i < r.pos(); ++i)
        payload.u8();
    for (Layer& layer : model.layers) {
        for (double& v : layer.W.values())
            v = payload.f32();
        for (double& v : layer.b.values())
            v = payload.f32();
    }
    for (double& v : model.hash_table)
        v = payload.f32();
    return model;
}

void save_model(const InrModel& model, const std::filesystem::path& path)
{
    const auto bytes = serialize(model);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write '" + tmp.string() + "'");
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw IoError("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

InrModel load_model(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open model '" + path.string() + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

std::uint64_t asset_size_bits(const std::filesystem::path& path)
{
    return 32ull * param_count(load_model(path).spec);
}

} // namespace texinr

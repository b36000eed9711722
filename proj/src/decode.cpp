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

#include "texinr/decode.hpp"

#include "texinr/error.hpp"

#include <algorithm>

namespace texinr {

namespace {
constexpr std::size_t kRowsPerChunk = 64;
}

Image decode_image(const InrModel& model, std::size_t width, std::size_t height, std::optional<double> t)
{
    const bool wants_t = model.spec.input_dim == 3;
    if (wants_t != t.has_value())
        throw ShapeError(wants_t ? "model takes (u,v,t) but no t was given"
                                 : "model takes (u,v) but a t value was given");
    if (width == 0 || height == 0)
        throw ShapeError("cannot decode an empty image");

    Image img(width, height);
    const std::size_t d = model.spec.input_dim;
    for (std::size_t y0 = 0; y0 < height; y0 += kRowsPerChunk) {
        const std::size_t rows = std::min(kRowsPerChunk, height - y0);
        Matrix coords(rows * width, d);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t x = 0; x < width; ++x) {
                const std::size_t i = r * width + x;
                coords(i, 0) = (static_cast<double>(x) + 0.5) / static_cast<double>(width);
                coords(i, 1) = (static_cast<double>(y0 + r) + 0.5) / static_cast<double>(height);
                if (wants_t)
                    coords(i, 2) = *t;
            }
        const Matrix rgb = forward(model, coords);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t x = 0; x < width; ++x)
                for (std::size_t c = 0; c < Image::channels; ++c)
                    img.at(x, y0 + r, c) = rgb(r * width + x, c);
    }
    img.clamp01();
    return img;
}

MipmapPyramid decode_pyramid(const InrModel& model, std::size_t base_width, std::size_t base_height,
                             std::size_t levels)
{
    if (levels == 0)
        throw ConfigError("a pyramid needs at least one level");
    MipmapPyramid pyr;
    for (std::size_t l = 0; l < levels; ++l)
        pyr.levels.push_back(
            decode_image(model, mip_dim(base_width, l), mip_dim(base_height, l), level_t(l, levels)));
    return pyr;
}

} // namespace texinr

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

#include "texinr/image.hpp"
#include "texinr/network.hpp"

#include <optional>

namespace texinr {

/// Evaluates the model on the pixel-center UV grid of a width x height image
/// and clamps to [0,1]. `t` must be given exactly when the model takes (u,v,t).
Image decode_image(const InrModel& model, std::size_t width, std::size_t height,
                   std::optional<double> t = std::nullopt);

/// Decodes every level at ceil(base / 2^l) with t = l/(levels-1).
MipmapPyramid decode_pyramid(const InrModel& model, std::size_t base_width, std::size_t base_height,
                             std::size_t levels = kDefaultMipLevels);

} // namespace texinr

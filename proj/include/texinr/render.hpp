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

#include <array>
#include <optional>

namespace texinr {

struct RenderParams {
    std::size_t width = 256;
    std::size_t height = 256;
    double fov_deg = 40.0;
    double camera_distance = 3.0; // camera sits on +z looking at the origin
    std::array<double, 3> light_dir{-1.0, 1.0, 1.0}; // towards the light; normalized internally
    std::array<double, 3> background{0.0, 0.0, 0.0};
    /// Mipmap models: base texture size used to turn UV footprints into texels.
    std::size_t texture_size = 256;
    std::size_t mip_levels = kDefaultMipLevels;
};

struct Vec3 {
    double x, y, z;
};

/// Unit direction of the primary ray through the centre of pixel (px, py).
Vec3 camera_ray(const RenderParams& p, std::size_t px, std::size_t py);

/// Nearest hit of a ray from (0,0,camera_distance) with the unit sphere,
/// returned as the surface point (which is also the normal).
std::optional<Vec3> intersect_unit_sphere(const RenderParams& p, const Vec3& dir);

/// u = 0.5 + atan2(n.z, n.x) / 2pi, v = 0.5 - asin(n.y) / pi.
std::array<double, 2> sphere_uv(const Vec3& n);

/// Nearest mip level from the UV footprint (texels per pixel) on a log2 scale.
std::size_t lod_level(double texel_footprint, std::size_t levels);

/// Ray-traces a unit sphere textured by the model under one directional light
/// with Lambert shading: albedo * max(0, n . l). Ray misses get the background.
Image render_sphere(const InrModel& model, const RenderParams& params = {});

} // namespace texinr

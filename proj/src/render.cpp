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

#include "texinr/render.hpp"

#include "texinr/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace texinr {

namespace {

Vec3 normalize(Vec3 v)
{
    const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    return {v.x / n, v.y / n, v.z / n};
}

double dot(const Vec3& a, const Vec3& b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

struct Hit {
    std::size_t px, py;
    Vec3 n;
    std::array<double, 2> uv;
    double t = 0.0; // LOD coordinate for mipmap models
};

std::optional<std::array<double, 2>> uv_at(const RenderParams& p, long px, long py)
{
    if (px < 0 || py < 0 || px >= static_cast<long>(p.width) || py >= static_cast<long>(p.height))
        return std::nullopt;
    const auto hit = intersect_unit_sphere(p, camera_ray(p, static_cast<std::size_t>(px), static_cast<std::size_t>(py)));
    if (!hit)
        return std::nullopt;
    return sphere_uv(*hit);
}

double uv_distance(const std::array<double, 2>& a, const std::array<double, 2>& b)
{
    double du = std::abs(a[0] - b[0]);
    du = std::min(du, 1.0 - du); // u wraps around the seam
    const double dv = a[1] - b[1];
    return std::sqrt(du * du + dv * dv);
}

// Largest UV step to a neighbouring pixel on the sphere, in texels.
double texel_footprint(const RenderParams& p, const Hit& h)
{
    double step = 0.0;
    const long x = static_cast<long>(h.px), y = static_cast<long>(h.py);
    for (auto [dx, dy] : {std::pair{1L, 0L}, std::pair{0L, 1L}}) {
        auto nb = uv_at(p, x + dx, y + dy);
        if (!nb)
            nb = uv_at(p, x - dx, y - dy);
        if (nb)
            step = std::max(step, uv_distance(h.uv, *nb));
    }
    return step * static_cast<double>(p.texture_size);
}

} // namespace

Vec3 camera_ray(const RenderParams& p, std::size_t px, std::size_t py)
{
    const double tan_half = std::tan(p.fov_deg * std::numbers::pi / 360.0);
    const double aspect = static_cast<double>(p.width) / static_cast<double>(p.height);
    const double sx = (2.0 * (static_cast<double>(px) + 0.5) / static_cast<double>(p.width) - 1.0) * tan_half * aspect;
    const double sy = (1.0 - 2.0 * (static_cast<double>(py) + 0.5) / static_cast<double>(p.height)) * tan_half;
    return normalize({sx, sy, -1.0});
}

std::optional<Vec3> intersect_unit_sphere(const RenderParams& p, const Vec3& d)
{
    const Vec3 o{0.0, 0.0, p.camera_distance};
    const double b = dot(o, d);
    const double c = dot(o, o) - 1.0;
    const double disc = b * b - c;
    if (disc < 0.0)
        return std::nullopt;
    const double t = -b - std::sqrt(disc);
    if (t <= 0.0)
        return std::nullopt;
    return normalize({o.x + t * d.x, o.y + t * d.y, o.z + t * d.z});
}

std::array<double, 2> sphere_uv(const Vec3& n)
{
    const double u = 0.5 + std::atan2(n.z, n.x) / (2.0 * std::numbers::pi);
    const double v = 0.5 - std::asin(std::clamp(n.y, -1.0, 1.0)) / std::numbers::pi;
    return {u, v};
}

std::size_t lod_level(double texel_footprint, std::size_t levels)
{
    if (levels <= 1 || !(texel_footprint > 1.0))
        return 0;
    const double level = std::round(std::log2(texel_footprint));
    return static_cast<std::size_t>(std::clamp(level, 0.0, static_cast<double>(levels - 1)));
}

Image render_sphere(const InrModel& model, const RenderParams& params)
{
    if (params.width == 0 || params.height == 0)
        throw ConfigError("render target must be non-empty");
    const Vec3 light = normalize({params.light_dir[0], params.light_dir[1], params.light_dir[2]});
    const bool mip = model.spec.input_dim == 3;

    Image out(params.width, params.height);
    std::vector<Hit> hits;
    for (std::size_t py = 0; py < params.height; ++py)
        for (std::size_t px = 0; px < params.width; ++px) {
            const auto hit = intersect_unit_sphere(params, camera_ray(params, px, py));
            if (!hit) {
                for (std::size_t c = 0; c < Image::channels; ++c)
                    out.at(px, py, c) = params.background[c];
                continue;
            }
            hits.push_back({px, py, *hit, sphere_uv(*hit)});
        }
    if (hits.empty())
        return out;

    Matrix coords(hits.size(), model.spec.input_dim);
    for (std::size_t i = 0; i < hits.size(); ++i) {
        Hit& h = hits[i];
        coords(i, 0) = h.uv[0];
        coords(i, 1) = h.uv[1];
        if (mip) {
            h.t = level_t(lod_level(texel_footprint(params, h), params.mip_levels), params.mip_levels);
            coords(i, 2) = h.t;
        }
    }
    const Matrix albedo = forward(model, coords);

    for (std::size_t i = 0; i < hits.size(); ++i) {
        const Hit& h = hits[i];
        const double lambert = std::max(0.0, dot(h.n, light));
        for (std::size_t c = 0; c < Image::channels; ++c)
            out.at(h.px, h.py, c) = std::clamp(albedo(i, c), 0.0, 1.0) * lambert;
    }
    return out;
}

} // namespace texinr

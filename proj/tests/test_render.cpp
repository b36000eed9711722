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

#include "texinr/render.hpp"

#include <doctest.h>

#include <cmath>

using namespace texinr;
using namespace texinr::testing;

namespace {

InrModel constant_albedo(double r, double g, double b, std::size_t input_dim = 2)
{
    InrModel m = zeros(make_spec(Architecture::mlp, 4, 1, input_dim));
    m.layers.back().b = Vector{r, g, b};
    return m;
}

} // namespace

TEST_CASE("ray misses take the background colour exactly")
{
    RenderParams p;
    p.width = p.height = 32;
    p.background = {0.2, 0.3, 0.4};
    const Image img = render_sphere(constant_albedo(1, 1, 1), p);
    CHECK(img.at(0, 0, 0) == 0.2);
    CHECK(img.at(31, 0, 1) == 0.3);
    CHECK(img.at(0, 31, 2) == 0.4);
}

TEST_CASE("constant albedo follows the Lambert term per pixel")
{
    RenderParams p;
    p.width = 40;
    p.height = 30;
    const Image img = render_sphere(constant_albedo(0.5, 0.8, 1.5), p);
    const double ln = std::sqrt(3.0);
    std::size_t hits = 0;
    for (std::size_t y = 0; y < p.height; ++y)
        for (std::size_t x = 0; x < p.width; ++x) {
            const auto hit = intersect_unit_sphere(p, camera_ray(p, x, y));
            if (!hit)
                continue;
            ++hits;
            const double n_dot_l = std::max(0.0, (-hit->x + hit->y + hit->z) / ln);
            CHECK(img.at(x, y, 0) == doctest::Approx(0.5 * n_dot_l).epsilon(1e-12));
            CHECK(img.at(x, y, 1) == doctest::Approx(0.8 * n_dot_l).epsilon(1e-12));
            CHECK(img.at(x, y, 2) == doctest::Approx(1.0 * n_dot_l).epsilon(1e-12)); // albedo clamped
        }
    CHECK(hits > 100);
}

TEST_CASE("centre ray hits the front of the sphere")
{
    RenderParams p;
    p.width = p.height = 1;
    const Vec3 d = camera_ray(p, 0, 0);
    CHECK(d.z == doctest::Approx(-1.0));
    const auto hit = intersect_unit_sphere(p, d);
    REQUIRE(hit);
    CHECK(hit->z == doctest::Approx(1.0));
    const auto uv = sphere_uv(*hit);
    CHECK(uv[0] == doctest::Approx(0.75));
    CHECK(uv[1] == doctest::Approx(0.5));
}

TEST_CASE("sphere uv at the poles and equator")
{
    CHECK(sphere_uv({0, 1, 0})[1] == doctest::Approx(0.0));
    CHECK(sphere_uv({0, -1, 0})[1] == doctest::Approx(1.0));
    CHECK(sphere_uv({1, 0, 0})[0] == doctest::Approx(0.5));
}

TEST_CASE("rendering is deterministic")
{
    const InrModel m = init(make_spec(Architecture::siren, 16, 2), 4);
    RenderParams p;
    p.width = p.height = 24;
    CHECK(render_sphere(m, p) == render_sphere(m, p));
}

TEST_CASE("mip level selection")
{
    CHECK(lod_level(0.5, 6) == 0);
    CHECK(lod_level(1.0, 6) == 0);
    CHECK(lod_level(2.0, 6) == 1);
    CHECK(lod_level(3.9, 6) == 2);
    CHECK(lod_level(1e6, 6) == 5);
    CHECK(lod_level(100.0, 1) == 0);
}

TEST_CASE("a small render of a mipmap model uses coarser levels")
{
    // albedo = t, so brighter pixels mean coarser levels
    InrModel m = zeros(make_spec(Architecture::mlp, 1, 1, 3));
    m.layers[0].W(2, 0) = 1.0;
    m.layers[1].W = Matrix{{1.0, 1.0, 1.0}};
    RenderParams big, small;
    big.width = big.height = 256;
    small.width = small.height = 16;
    big.light_dir = small.light_dir = {0, 0, 1};
    const Image hi = render_sphere(m, big), lo = render_sphere(m, small);
    CHECK(hi.at(128, 128, 0) < lo.at(8, 8, 0));
}

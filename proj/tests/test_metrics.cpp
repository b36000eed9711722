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
#include "texinr/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace texinr;
using namespace texinr::testing;

namespace {

Image gray(std::size_t w, std::size_t h, double v)
{
    return Image::filled(w, h, {v, v, v});
}

} // namespace

TEST_CASE("identical images: zero error, infinite psnr, ssim one")
{
    const Image a = random_image(17, 11, 3);
    CHECK(mae(a, a) == 0.0);
    CHECK(mse(a, a) == 0.0);
    CHECK(std::isinf(psnr(mse(a, a))));
    CHECK(ssim(a, a) == 1.0);
    SsimConfig g;
    g.window = SsimWindow::gaussian;
    CHECK(ssim(a, a, g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("black against white")
{
    const Image black = gray(4, 4, 0.0), white = gray(4, 4, 1.0);
    CHECK(mae(black, white) == 255.0);
    CHECK(mse(black, white) == 65025.0);
    CHECK(psnr(65025.0) == 0.0);
}

TEST_CASE("mae and mse match a brute-force oracle")
{
    const Image a = random_image(9, 7, 1), b = random_image(9, 7, 2);
    double abs_sum = 0.0, sq_sum = 0.0;
    for (std::size_t y = 0; y < 7; ++y)
        for (std::size_t x = 0; x < 9; ++x)
            for (std::size_t c = 0; c < 3; ++c) {
                const double d = 255.0 * a.at(x, y, c) - 255.0 * b.at(x, y, c);
                abs_sum += std::abs(d);
                sq_sum += d * d;
            }
    CHECK(mae(a, b) == doctest::Approx(abs_sum / (9 * 7 * 3)).epsilon(1e-12));
    CHECK(mse(a, b) == doctest::Approx(sq_sum / (9 * 7 * 3)).epsilon(1e-12));
}

TEST_CASE("metrics reject shape mismatch")
{
    CHECK_THROWS_AS(mae(Image(2, 2), Image(2, 3)), ShapeError);
    CHECK_THROWS_AS(ssim(Image(2, 2), Image(3, 2)), ShapeError);
}

TEST_CASE("psnr values")
{
    CHECK(psnr(650.25) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(psnr(121.5) == doctest::Approx(27.2851).epsilon(1e-5));
    CHECK(psnr(1.0) == doctest::Approx(48.1308).epsilon(1e-5));
    CHECK_THROWS_AS(psnr(-1.0), DomainError);
    CHECK_THROWS_AS(psnr(std::nan("")), DomainError);
    double last = std::numeric_limits<double>::infinity();
    for (double m : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
        CHECK(psnr(m) < last);
        last = psnr(m);
    }
}

TEST_CASE("ssim under a brightness shift is the luminance term alone")
{
    Image a = random_image(16, 16, 5);
    for (double& v : a.values())
        v = 0.1 + 0.6 * v;
    Image b = a;
    for (double& v : b.values())
        v += 0.2;
    double mu_a = 0.0, mu_b = 0.0;
    for (std::size_t y = 0; y < 16; ++y)
        for (std::size_t x = 0; x < 16; ++x) {
            mu_a += luma255(a, x, y);
            mu_b += luma255(b, x, y);
        }
    mu_a /= 256.0;
    mu_b /= 256.0;
    const double c1 = (0.01 * 255) * (0.01 * 255);
    const double expect = (2 * mu_a * mu_b + c1) / (mu_a * mu_a + mu_b * mu_b + c1);
    CHECK(ssim(a, b) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("ssim is symmetric and bounded")
{
    const Image a = random_image(24, 20, 7), b = random_image(24, 20, 8);
    CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-14));
    SsimConfig g;
    g.window = SsimWindow::gaussian;
    const double s = ssim(a, b, g);
    CHECK(s == doctest::Approx(ssim(b, a, g)).epsilon(1e-12));
    CHECK(s <= 1.0);
    CHECK(s >= -1.0);
}

TEST_CASE("ssim of an inverted image is negative")
{
    const Image a = random_image(16, 16, 9);
    Image inv = a;
    for (double& v : inv.values())
        v = 1.0 - v;
    CHECK(ssim(a, inv) < 0.0);
}

TEST_CASE("ssim terms by hand")
{
    const SsimConfig cfg;
    const SsimTerms t = ssim_terms(100.0, 120.0, 400.0, 100.0, 150.0, cfg);
    CHECK(t.l == doctest::Approx((2 * 100.0 * 120.0 + cfg.c1) / (100.0 * 100.0 + 120.0 * 120.0 + cfg.c1)));
    CHECK(t.c == doctest::Approx((2 * 20.0 * 10.0 + cfg.c2) / (400.0 + 100.0 + cfg.c2)));
    CHECK(t.s == doctest::Approx((150.0 + cfg.c3) / (200.0 + cfg.c3)));
    CHECK(ssim_combine(t, cfg) == doctest::Approx(t.l * t.c * t.s));
}

TEST_CASE("luma is exact for gray pixels")
{
    for (int k = 0; k <= 255; ++k) {
        const Image g = gray(1, 1, k / 255.0);
        CHECK(luma255(g, 0, 0) == doctest::Approx(k).epsilon(1e-14));
    }
    Image red(1, 1);
    red.at(0, 0, 0) = 1.0;
    CHECK(luma255(red, 0, 0) == doctest::Approx(0.299 * 255).epsilon(1e-12));
}

TEST_CASE("lapv: constant and linear ramp are zero")
{
    CHECK(lapv(gray(8, 8, 0.4)) == 0.0);
    Image ramp(9, 6);
    for (std::size_t y = 0; y < 6; ++y)
        for (std::size_t x = 0; x < 9; ++x)
            for (std::size_t c = 0; c < 3; ++c)
                ramp.at(x, y, c) = static_cast<double>(x) / 8.0;
    CHECK(lapv(ramp) == 0.0);
}

TEST_CASE("lapv: single bright pixel by hand")
{
    Image img = gray(5, 5, 0.0);
    for (std::size_t c = 0; c < 3; ++c)
        img.at(2, 2, c) = 1.0;
    // interior responses: centre -1020, four edge neighbours +255, corners 0
    CHECK(lapv(img) == doctest::Approx((1020.0 * 1020.0 + 4 * 255.0 * 255.0) / 9.0).epsilon(1e-12));
}

TEST_CASE("lapv invariances")
{
    const Image a = random_image(20, 20, 12);
    Image shifted = a;
    for (double& v : shifted.values())
        v += 0.25;
    CHECK(lapv(shifted) == doctest::Approx(lapv(a)).epsilon(1e-10));
    Image scaled = a;
    for (double& v : scaled.values())
        v *= 0.5;
    CHECK(lapv(scaled) == doctest::Approx(0.25 * lapv(a)).epsilon(1e-10));
    CHECK(lapv(checkerboard(32, 16)) > lapv(checkerboard(32, 2)));
    CHECK_THROWS_AS(lapv(Image(2, 5)), ShapeError);
}

TEST_CASE("bits per pixel and bucketing")
{
    CHECK(bits_per_pixel(771, 128, 128) == doctest::Approx(1.5059).epsilon(1e-4));
    CHECK(bucket_bpp(bits_per_pixel(771, 128, 128)) == 2.0);
    CHECK(bucket_bpp(5.0) == 6.0);
    CHECK(bucket_bpp(3.0) == 4.0);
    CHECK(bucket_bpp(0.99) == 0.0);
    CHECK(bucket_bpp(7.2) == 8.0);
    CHECK(bits_per_pixel(0, 64, 64) == 0.0);
    CHECK(bucket_bpp(0.0) == 0.0);
}

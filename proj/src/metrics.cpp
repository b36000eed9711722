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

#include "texinr/metrics.hpp"

#include "texinr/error.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace texinr {

namespace {

void require_same_shape(const Image& a, const Image& b, const char* what)
{
    if (a.width() != b.width() || a.height() != b.height())
        throw ShapeError(std::string(what) + ": image sizes differ (" + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()) + ")");
    if (a.empty())
        throw ShapeError(std::string(what) + ": empty images");
}

double signed_pow(double x, double e)
{
    if (e == 1.0)
        return x;
    return x < 0.0 ? -std::pow(-x, e) : std::pow(x, e);
}

std::vector<double> luma_plane(const Image& img)
{
    std::vector<double> y(img.pixel_count());
    for (std::size_t j = 0; j < img.height(); ++j)
        for (std::size_t i = 0; i < img.width(); ++i)
            y[j * img.width() + i] = luma255(img, i, j);
    return y;
}

double global_ssim(const std::vector<double>& ya, const std::vector<double>& yb, const SsimConfig& cfg)
{
    const double n = static_cast<double>(ya.size());
    double mu_a = 0.0, mu_b = 0.0;
    for (std::size_t i = 0; i < ya.size(); ++i) {
        mu_a += ya[i];
        mu_b += yb[i];
    }
    mu_a /= n;
    mu_b /= n;
    double var_a = 0.0, var_b = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < ya.size(); ++i) {
        const double da = ya[i] - mu_a, db = yb[i] - mu_b;
        var_a += da * da;
        var_b += db * db;
        cov += da * db;
    }
    return ssim_combine(ssim_terms(mu_a, mu_b, var_a / n, var_b / n, cov / n, cfg), cfg);
}

} // namespace

double mae(const Image& a, const Image& b)
{
    require_same_shape(a, b, "mae");
    double sum = 0.0;
    auto va = a.values(), vb = b.values();
    for (std::size_t i = 0; i < va.size(); ++i)
        sum += std::abs(va[i] * 255.0 - vb[i] * 255.0);
    return sum / static_cast<double>(va.size());
}

double mse(const Image& a, const Image& b)
{
    require_same_shape(a, b, "mse");
    double sum = 0.0;
    auto va = a.values(), vb = b.values();
    for (std::size_t i = 0; i < va.size(); ++i) {
        const double d = va[i] * 255.0 - vb[i] * 255.0;
        sum += d * d;
    }
    return sum / static_cast<double>(va.size());
}

double psnr(double mse_255)
{
    if (std::isnan(mse_255) || mse_255 < 0.0)
        throw DomainError("psnr: mse must be non-negative");
    if (mse_255 == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse_255);
}

SsimTerms ssim_terms(double mu_a, double mu_b, double var_a, double var_b, double cov, const SsimConfig& cfg)
{
    const double sd_ab = std::sqrt(var_a * var_b);
    SsimTerms t;
    t.l = (2.0 * mu_a * mu_b + cfg.c1) / (mu_a * mu_a + mu_b * mu_b + cfg.c1);
    t.c = (2.0 * sd_ab + cfg.c2) / (var_a + var_b + cfg.c2);
    t.s = (cov + cfg.c3) / (sd_ab + cfg.c3);
    return t;
}

double ssim_combine(const SsimTerms& t, const SsimConfig& cfg)
{
    return signed_pow(t.l, cfg.alpha) * signed_pow(t.c, cfg.beta) * signed_pow(t.s, cfg.gamma);
}

double luma255(const Image& img, std::size_t x, std::size_t y)
{
    // 0.299 R + 0.587 G + 0.114 B, arranged so gray pixels map to exactly 255 G.
    const double r = img.at(x, y, 0), g = img.at(x, y, 1), b = img.at(x, y, 2);
    return 255.0 * (g + (0.299 * (r - g) + 0.114 * (b - g)));
}

double ssim(const Image& a, const Image& b, const SsimConfig& cfg)
{
    require_same_shape(a, b, "ssim");
    if (!(cfg.c1 > 0 && cfg.c2 > 0 && cfg.c3 > 0 && cfg.alpha > 0 && cfg.beta > 0 && cfg.gamma > 0))
        throw ConfigError("ssim constants and exponents must be positive");

    const auto ya = luma_plane(a);
    const auto yb = luma_plane(b);
    const std::size_t w = a.width(), h = a.height(), k = cfg.window_size;
    if (cfg.window == SsimWindow::global || w < k || h < k || k == 0)
        return global_ssim(ya, yb, cfg);

    std::vector<double> kernel(k * k);
    double ksum = 0.0;
    const double half = (static_cast<double>(k) - 1.0) / 2.0;
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) {
            const double dx = static_cast<double>(i) - half, dy = static_cast<double>(j) - half;
            kernel[j * k + i] = std::exp(-(dx * dx + dy * dy) / (2.0 * cfg.window_sigma * cfg.window_sigma));
            ksum += kernel[j * k + i];
        }
    for (double& v : kernel)
        v /= ksum;

    double total = 0.0;
    std::size_t windows = 0;
    for (std::size_t y0 = 0; y0 + k <= h; ++y0)
        for (std::size_t x0 = 0; x0 + k <= w; ++x0) {
            double mu_a = 0.0, mu_b = 0.0;
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t i = 0; i < k; ++i) {
                    const double g = kernel[j * k + i];
                    mu_a += g * ya[(y0 + j) * w + x0 + i];
                    mu_b += g * yb[(y0 + j) * w + x0 + i];
                }
            double var_a = 0.0, var_b = 0.0, cov = 0.0;
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t i = 0; i < k; ++i) {
                    const double g = kernel[j * k + i];
                    const double da = ya[(y0 + j) * w + x0 + i] - mu_a;
                    const double db = yb[(y0 + j) * w + x0 + i] - mu_b;
                    var_a += g * da * da;
                    var_b += g * db * db;
                    cov += g * da * db;
                }
            total += ssim_combine(ssim_terms(mu_a, mu_b, var_a, var_b, cov, cfg), cfg);
            ++windows;
        }
    return total / static_cast<double>(windows);
}

double lapv(const Image& img)
{
    if (img.width() < 3 || img.height() < 3)
        throw ShapeError("lapv needs an image of at least 3x3 pixels");
    const auto y = luma_plane(img);
    const std::size_t w = img.width();
    std::vector<double> resp;
    resp.reserve((img.width() - 2) * (img.height() - 2));
    for (std::size_t j = 1; j + 1 < img.height(); ++j)
        for (std::size_t i = 1; i + 1 < w; ++i) {
            const double c = y[j * w + i];
            const double vertical = y[(j - 1) * w + i] + y[(j + 1) * w + i];
            const double horizontal = y[j * w + i - 1] + y[j * w + i + 1];
            resp.push_back((vertical + horizontal) - 4.0 * c);
        }
    double mean = 0.0;
    for (double r : resp)
        mean += r;
    mean /= static_cast<double>(resp.size());
    double var = 0.0;
    for (double r : resp)
        var += (r - mean) * (r - mean);
    return var / static_cast<double>(resp.size());
}

double bits_per_pixel(std::size_t param_count, std::size_t width, std::size_t height)
{
    if (width == 0 || height == 0)
        throw DomainError("bits_per_pixel: image has no pixels");
    return static_cast<double>(param_count) * 32.0 / static_cast<double>(width * height);
}

double bucket_bpp(double bpp)
{
    return 2.0 * std::round(bpp / 2.0);
}

bool EvalRecord::psnr_infinite() const
{
    return std::isinf(psnr_db);
}

} // namespace texinr

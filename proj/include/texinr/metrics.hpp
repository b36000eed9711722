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

#include <cstddef>
#include <string>

namespace texinr {

// Pixel-difference metrics work on the 0-255 scale: inputs in [0,1] are
// multiplied by 255 before differencing.

double mae(const Image& a, const Image& b);
double mse(const Image& a, const Image& b);

/// 10 log10(255^2 / mse) in dB. Returns +infinity for mse == 0 and throws
/// DomainError for negative or NaN input.
double psnr(double mse_255);

enum class SsimWindow { global, gaussian };

struct SsimConfig {
    double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    double c2 = (0.03 * 255.0) * (0.03 * 255.0);
    double c3 = (0.03 * 255.0) * (0.03 * 255.0) / 2.0;
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    SsimWindow window = SsimWindow::global;
    std::size_t window_size = 11; // gaussian mode
    double window_sigma = 1.5;    // gaussian mode
};

/// Luminance, contrast and structure terms of one window.
struct SsimTerms {
    double l;
    double c;
    double s;
};

/// Terms from the statistics of the Y channels of two windows.
SsimTerms ssim_terms(double mu_a, double mu_b, double var_a, double var_b, double cov, const SsimConfig& cfg);

/// l^alpha * c^beta * s^gamma; a negative structure term keeps its sign.
double ssim_combine(const SsimTerms& t, const SsimConfig& cfg);

/// SSIM on Y = 0.299 R + 0.587 G + 0.114 B (0-255 scale). Global mode uses
/// whole-image statistics; gaussian mode averages over all fully contained
/// windows and falls back to global for images smaller than the window.
double ssim(const Image& a, const Image& b, const SsimConfig& cfg = {});

/// Luma in 0-255 of one pixel.
double luma255(const Image& img, std::size_t x, std::size_t y);

/// Variance of the 4-neighbour Laplacian response of the luma image over
/// interior pixels. Requires width, height >= 3.
double lapv(const Image& img);

/// param_count * 32 / (width * height).
double bits_per_pixel(std::size_t param_count, std::size_t width, std::size_t height);

/// 2 * round(bpp / 2), ties away from zero.
double bucket_bpp(double bpp);

struct EvalRecord {
    std::string model_id;
    std::string image;
    std::string arch;
    std::size_t width = 0; // hidden width
    std::size_t depth = 0; // hidden layer count
    std::string optimizer;
    double learning_rate = 0.0;
    std::size_t epochs = 0;
    std::size_t params = 0;
    double mae = 0.0;
    double mse = 0.0;
    double psnr_db = 0.0;
    double ssim = 0.0;
    double bpp = 0.0;
    double train_seconds = 0.0;

    bool psnr_infinite() const;
};

} // namespace texinr

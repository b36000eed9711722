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
#include "texinr/metrics.hpp"
#include "texinr/network.hpp"
#include "texinr/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace texinr {

struct TrainJob {
    std::string name = "model";
    NetworkSpec spec;
    OptimizerConfig optimizer;
    std::size_t epochs = 50;
    std::uint64_t seed = 0;
    bool mipmap = false;
    std::size_t mip_levels = kDefaultMipLevels;
    std::vector<std::size_t> snapshot_epochs{1, 10, 20, 30, 40, 50};
    /// 0 = full batch. Otherwise samples are shuffled each epoch and the
    /// optimizer steps once per batch.
    std::size_t batch_size = 0;
    /// When set, the loss curve, snapshot PNGs/checkpoints and the final
    /// model are written here.
    std::optional<std::filesystem::path> output_dir;
};

/// Throws ConfigError for epochs == 0 or snapshot epochs outside [1, epochs].
void validate(const TrainJob& job);

/// Job name in the style "<arch>_<width>x<depth>_<image>_<lr>_<optimizer>".
std::string default_job_name(const TrainJob& job, const std::string& image_stem);

struct Snapshot {
    std::size_t epoch;
    Image image; // decoded base level, or the packed atlas for mipmap models
};

struct TrainResult {
    InrModel model;
    std::vector<double> loss_curve; // loss at the start of each epoch
    std::vector<Snapshot> snapshots;
    std::size_t epochs_completed = 0;
    bool diverged = false; // model then holds the last parameters with finite loss
    double seconds = 0.0;
};

/// Overfits a fresh network to `image` (or its mip pyramid) with MSE loss.
/// Deterministic for a fixed job.
TrainResult train(const TrainJob& job, const Image& image);

/// Per-level metric values for pyramid evaluation.
struct LevelMetrics {
    std::size_t width, height;
    double mae, mse, psnr_db, ssim;
};

struct EvalResult {
    EvalRecord record;
    std::vector<LevelMetrics> levels; // one entry for single-image models
};

/// Decodes the model against `reference`. Models taking (u,v,t) are
/// evaluated over a pyramid of `mip_levels` built from the reference, and the
/// per-level metrics are averaged with weights W_l * H_l. bpp is computed
/// from the reference (base) dimensions.
EvalResult evaluate(const InrModel& model, const Image& reference, std::size_t mip_levels = kDefaultMipLevels,
                    const SsimConfig& ssim_cfg = {});

/// Writes "epoch<TAB>loss" lines, epochs counted from 1.
void write_loss_curve(const std::vector<double>& curve, const std::filesystem::path& path);

} // namespace texinr

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

#include "texinr/metrics.hpp"
#include "texinr/network.hpp"
#include "texinr/optimizer.hpp"
#include "texinr/train.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace texinr {

struct SweepConfig {
    std::vector<std::filesystem::path> images;
    std::vector<Architecture> architectures{Architecture::mlp, Architecture::siren, Architecture::fourier};
    std::vector<GridPoint> grid = standard_grid();
    std::vector<OptimizerKind> optimizers{OptimizerKind::adam, OptimizerKind::rprop};
    std::size_t epochs = 50;
    std::uint64_t seed = 0;
    bool mipmap = false;
    std::size_t mip_levels = kDefaultMipLevels;
    std::size_t workers = 1;
    /// When false the seconds column is left empty so reports are
    /// byte-reproducible.
    bool record_timing = true;
    /// Optional per-job artifacts (models, loss curves); none when empty.
    std::filesystem::path job_dir;
};

struct SweepFailure {
    std::string job;
    std::string error;
};

struct SeriesPoint {
    double bucket;
    std::size_t count;
    double mean;
    double stddev; // sample standard deviation; 0 for a single record
};

/// Key: (architecture, optimizer).
using SeriesKey = std::pair<std::string, std::string>;

struct SweepReport {
    std::vector<EvalRecord> records; // manifest order
    std::vector<SweepFailure> failures;
};

/// Number of jobs the sweep will run.
std::size_t job_count(const SweepConfig& cfg);

/// Runs images x architectures x grid x optimizers. Records come back in that
/// order regardless of the worker count. Failing jobs are reported, not thrown.
SweepReport run_sweep(const SweepConfig& cfg);

/// Metric names accepted by series_for: mae, mse, psnr, ssim.
const std::vector<std::string>& series_metrics();

/// Bucketed rate-distortion series of one metric, grouped by (arch, optimizer).
std::map<SeriesKey, std::vector<SeriesPoint>> series_for(const std::vector<EvalRecord>& records,
                                                         const std::string& metric);

// Report files. CSV columns, in order:
//   image,arch,width,depth,optimizer,lr,epochs,params,bpp,bucket,mae,mse,psnr,ssim,seconds,lpips,vmaf
// lpips and vmaf are reserved and always empty. Reals use 17 significant digits.
extern const char* const kCsvHeader;

void write_csv(const std::vector<EvalRecord>& records, const std::filesystem::path& path, bool record_timing = true);
std::vector<EvalRecord> read_csv(const std::filesystem::path& path);

/// Writes series_<arch>_<metric>.tsv files into `dir` for every architecture
/// and metric; returns the written paths.
std::vector<std::filesystem::path> write_series(const std::vector<EvalRecord>& records,
                                                const std::filesystem::path& dir);

} // namespace texinr

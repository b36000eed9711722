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

#include "texinr/train.hpp"

#include "texinr/decode.hpp"
#include "texinr/error.hpp"
#include "texinr/model_store.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace texinr {

namespace {

// Rows per forward/backward chunk; bounds tape memory without changing the
// full-batch gradient.
constexpr std::size_t kChunkRows = 4096;

std::string format_lr(double lr)
{
    const double e = std::log10(lr);
    if (std::abs(e - std::round(e)) < 1e-9) {
        std::ostringstream s;
        s << "1e" << static_cast<long>(std::round(e));
        return s.str();
    }
    std::ostringstream s;
    s << lr;
    return s.str();
}

Matrix rows_of(const Matrix& m, std::span<const std::size_t> idx)
{
    Matrix out(idx.size(), m.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        auto src = m.row(idx[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

Matrix row_range(const Matrix& m, std::size_t begin, std::size_t end)
{
    Matrix out(end - begin, m.cols());
    auto src = m.values().subspan(begin * m.cols(), (end - begin) * m.cols());
    std::copy(src.begin(), src.end(), out.values().begin());
    return out;
}

// Full-batch loss and gradient over all rows, chunked.
double full_batch_gradient(const InrModel& model, const DatasetMatrices& data, ModelGradient& grad)
{
    grad.clear();
    const std::size_t n = data.coords.rows();
    const double normalizer = static_cast<double>(n * data.targets.cols());
    double sse = 0.0;
    for (std::size_t b = 0; b < n; b += kChunkRows) {
        const std::size_t e = std::min(n, b + kChunkRows);
        if (b == 0 && e == n)
            sse += accumulate_mse_gradient(model, data.coords, data.targets, normalizer, grad);
        else
            sse += accumulate_mse_gradient(model, row_range(data.coords, b, e), row_range(data.targets, b, e),
                                           normalizer, grad);
    }
    return sse / normalizer;
}

Image snapshot_image(const InrModel& model, const TrainJob& job, const Image& image)
{
    if (job.mipmap)
        return pack_atlas(decode_pyramid(model, image.width(), image.height(), job.mip_levels));
    return decode_image(model, image.width(), image.height());
}

} // namespace

void validate(const TrainJob& job)
{
    if (job.epochs == 0)
        throw ConfigError("epochs must be at least 1");
    for (std::size_t e : job.snapshot_epochs)
        if (e < 1 || e > job.epochs)
            throw ConfigError("snapshot epoch " + std::to_string(e) + " outside [1, " + std::to_string(job.epochs) +
                              "]");
    if (job.mipmap && job.spec.input_dim != 3)
        throw ConfigError("mipmap training needs input_dim 3");
    if (!job.mipmap && job.spec.input_dim != 2)
        throw ConfigError("single-image training needs input_dim 2");
    validate(job.spec);
    validate(job.optimizer);
}

std::string default_job_name(const TrainJob& job, const std::string& image_stem)
{
    std::ostringstream s;
    s << (job.mipmap ? "uvt_" : "uv_") << to_string(architecture_of(job.spec)) << '_' << job.spec.hidden_width << 'x'
      << job.spec.hidden_count;
    if (job.mipmap)
        s << "_mipmap_" << job.mip_levels;
    s << '_' << image_stem << '_' << format_lr(job.optimizer.learning_rate) << '_' << to_string(job.optimizer.kind);
    return s.str();
}

TrainResult train(const TrainJob& job, const Image& image)
{
    validate(job);
    const auto start = std::chrono::steady_clock::now();

    const auto samples = job.mipmap ? build_mipmap_dataset(build_pyramid(image, job.mip_levels)) : build_dataset(image);
    const DatasetMatrices data = to_matrices(samples);

    TrainResult result;
    result.model = init(job.spec, job.seed);
    InrModel last_good = result.model;
    Optimizer opt(job.optimizer);
    ModelGradient grad = ModelGradient::zeros_like(result.model);

    std::vector<std::size_t> order(data.coords.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 shuffle_rng(job.seed ^ 0x9E3779B97F4A7C15ull);

    if (job.output_dir)
        std::filesystem::create_directories(*job.output_dir);
    auto out_path = [&](const std::string& suffix) { return *job.output_dir / (job.name + suffix); };

    for (std::size_t epoch = 1; epoch <= job.epochs; ++epoch) {
        double loss = 0.0;
        bool step_failed = false;
        last_good = result.model;
        try {
            if (job.batch_size == 0 || job.batch_size >= order.size()) {
                loss = full_batch_gradient(result.model, data, grad);
                if (std::isfinite(loss))
                    opt.step(param_blocks(result.model, grad));
            }
            else {
                std::shuffle(order.begin(), order.end(), shuffle_rng);
                const double elems = static_cast<double>(order.size() * data.targets.cols());
                for (std::size_t b = 0; b < order.size() && std::isfinite(loss); b += job.batch_size) {
                    const std::size_t e = std::min(order.size(), b + job.batch_size);
                    const auto idx = std::span<const std::size_t>(order).subspan(b, e - b);
                    grad.clear();
                    const double batch_elems = static_cast<double>(idx.size() * data.targets.cols());
                    const double sse = accumulate_mse_gradient(result.model, rows_of(data.coords, idx),
                                                               rows_of(data.targets, idx), batch_elems, grad);
                    loss += sse / elems;
                    if (std::isfinite(loss))
                        opt.step(param_blocks(result.model, grad));
                }
            }
        }
        catch (const NumericError&) {
            step_failed = true;
        }

        if (!std::isfinite(loss) || step_failed) {
            result.diverged = true;
            result.model = last_good;
            break;
        }
        result.loss_curve.push_back(loss);
        result.epochs_completed = epoch;

        if (std::find(job.snapshot_epochs.begin(), job.snapshot_epochs.end(), epoch) != job.snapshot_epochs.end()) {
            InrModel stored = quantize32(result.model);
            try {
                Snapshot snap{epoch, snapshot_image(stored, job, image)};
                if (job.output_dir) {
                    save_png(snap.image, out_path("_e" + std::to_string(epoch) + ".png"));
                    save_model(stored, out_path("_e" + std::to_string(epoch) + ".tinr"));
                }
                result.snapshots.push_back(std::move(snap));
            }
            catch (const NumericError&) {
                result.diverged = true;
                result.model = last_good;
                break;
            }
        }
    }

    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (job.output_dir) {
        write_loss_curve(result.loss_curve, out_path("_loss.tsv"));
        if (!result.diverged)
            save_model(result.model, out_path(".tinr"));
    }
    return result;
}

EvalResult evaluate(const InrModel& model, const Image& reference, std::size_t mip_levels, const SsimConfig& ssim_cfg)
{
    EvalResult result;
    const bool pyramid = model.spec.input_dim == 3;

    std::vector<Image> refs, decoded;
    if (pyramid) {
        auto ref_pyr = build_pyramid(reference, mip_levels);
        auto dec_pyr = decode_pyramid(model, reference.width(), reference.height(), mip_levels);
        refs = std::move(ref_pyr.levels);
        decoded = std::move(dec_pyr.levels);
    }
    else {
        refs.push_back(reference);
        decoded.push_back(decode_image(model, reference.width(), reference.height()));
    }

    double total = 0.0;
    EvalRecord& rec = result.record;
    for (std::size_t l = 0; l < refs.size(); ++l) {
        const double m = mse(decoded[l], refs[l]);
        LevelMetrics lm{refs[l].width(), refs[l].height(), mae(decoded[l], refs[l]), m, psnr(m),
                        ssim(decoded[l], refs[l], ssim_cfg)};
        result.levels.push_back(lm);
        const double w = static_cast<double>(lm.width * lm.height);
        total += w;
        rec.mae += w * lm.mae;
        rec.mse += w * lm.mse;
        rec.psnr_db += w * lm.psnr_db;
        rec.ssim += w * lm.ssim;
    }
    rec.mae /= total;
    rec.mse /= total;
    rec.psnr_db /= total;
    rec.ssim /= total;

    rec.arch = to_string(architecture_of(model.spec));
    rec.width = model.spec.hidden_width;
    rec.depth = model.spec.hidden_count;
    rec.params = param_count(model.spec);
    rec.bpp = bits_per_pixel(rec.params, reference.width(), reference.height());
    return result;
}

void write_loss_curve(const std::vector<double>& curve, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write loss curve '" + path.string() + "'");
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < curve.size(); ++i)
        out << (i + 1) << '\t' << curve[i] << '\n';
}

} // namespace texinr

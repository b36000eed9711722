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

#include "texinr/sweep.hpp"

#include "texinr/error.hpp"
#include "texinr/image.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace texinr {

const char* const kCsvHeader =
    "image,arch,width,depth,optimizer,lr,epochs,params,bpp,bucket,mae,mse,psnr,ssim,seconds,lpips,vmaf";

namespace {

struct SweepJob {
    std::size_t image;
    Architecture arch;
    GridPoint grid;
    OptimizerKind optimizer;
};

std::string real(double v)
{
    std::ostringstream s;
    s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return s.str();
}

double metric_of(const EvalRecord& r, const std::string& metric)
{
    if (metric == "mae")
        return r.mae;
    if (metric == "mse")
        return r.mse;
    if (metric == "psnr")
        return r.psnr_db;
    if (metric == "ssim")
        return r.ssim;
    throw ConfigError("unknown metric '" + metric + "'");
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

} // namespace

std::size_t job_count(const SweepConfig& cfg)
{
    return cfg.images.size() * cfg.architectures.size() * cfg.grid.size() * cfg.optimizers.size();
}

SweepReport run_sweep(const SweepConfig& cfg)
{
    if (cfg.images.empty())
        throw ConfigError("sweep needs at least one image");

    std::vector<SweepJob> jobs;
    for (std::size_t i = 0; i < cfg.images.size(); ++i)
        for (Architecture arch : cfg.architectures)
            for (const GridPoint& g : cfg.grid)
                for (OptimizerKind opt : cfg.optimizers)
                    jobs.push_back({i, arch, g, opt});

    // Images are decoded once up front; a failed load fails that image's jobs.
    std::vector<std::optional<Image>> images(cfg.images.size());
    std::vector<std::string> load_errors(cfg.images.size());
    for (std::size_t i = 0; i < cfg.images.size(); ++i) {
        try {
            images[i] = load_image(cfg.images[i]);
        }
        catch (const Error& e) {
            load_errors[i] = e.what();
        }
    }

    std::vector<std::optional<EvalRecord>> results(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::vector<std::string> names(jobs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            const SweepJob& sj = jobs[j];
            const std::string stem = cfg.images[sj.image].stem().string();
            TrainJob job;
            job.spec = make_spec(sj.arch, sj.grid.width, sj.grid.depth, cfg.mipmap ? 3 : 2);
            job.optimizer = default_config(job.spec.activation, sj.optimizer);
            job.epochs = cfg.epochs;
            job.seed = cfg.seed;
            job.mipmap = cfg.mipmap;
            job.mip_levels = cfg.mip_levels;
            job.snapshot_epochs.clear();
            job.name = default_job_name(job, stem);
            names[j] = job.name;
            if (!cfg.job_dir.empty())
                job.output_dir = cfg.job_dir;
            try {
                if (!images[sj.image])
                    throw IoError(load_errors[sj.image]);
                TrainResult tr = train(job, *images[sj.image]);
                if (tr.diverged)
                    throw NumericError("training diverged after " + std::to_string(tr.epochs_completed) + " epochs");
                EvalResult ev = evaluate(tr.model, *images[sj.image], cfg.mip_levels);
                EvalRecord rec = ev.record;
                rec.model_id = job.name;
                rec.image = stem;
                rec.arch = to_string(sj.arch);
                rec.optimizer = to_string(sj.optimizer);
                rec.learning_rate = job.optimizer.learning_rate;
                rec.epochs = job.epochs;
                rec.train_seconds = tr.seconds;
                results[j] = rec;
            }
            catch (const std::exception& e) {
                errors[j] = e.what();
            }
        }
    };

    const std::size_t n_workers = std::max<std::size_t>(1, std::min(cfg.workers, jobs.size()));
    if (n_workers == 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back(worker);
    }

    SweepReport report;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (results[j])
            report.records.push_back(*results[j]);
        else
            report.failures.push_back({names[j], errors[j]});
    }
    return report;
}

const std::vector<std::string>& series_metrics()
{
    static const std::vector<std::string> metrics{"mae", "mse", "psnr", "ssim"};
    return metrics;
}

std::map<SeriesKey, std::vector<SeriesPoint>> series_for(const std::vector<EvalRecord>& records,
                                                         const std::string& metric)
{
    std::map<SeriesKey, std::map<double, std::vector<double>>> groups;
    for (const EvalRecord& r : records)
        groups[{r.arch, r.optimizer}][bucket_bpp(r.bpp)].push_back(metric_of(r, metric));

    std::map<SeriesKey, std::vector<SeriesPoint>> series;
    for (const auto& [key, buckets] : groups) {
        for (const auto& [bucket, values] : buckets) {
            double mean = 0.0;
            for (double v : values)
                mean += v;
            mean /= static_cast<double>(values.size());
            double var = 0.0;
            if (values.size() > 1) {
                for (double v : values)
                    var += (v - mean) * (v - mean);
                var /= static_cast<double>(values.size() - 1);
            }
            series[key].push_back({bucket, values.size(), mean, std::sqrt(var)});
        }
    }
    return series;
}

void write_csv(const std::vector<EvalRecord>& records, const std::filesystem::path& path, bool record_timing)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write CSV '" + path.string() + "'");
    out << kCsvHeader << '\n';
    for (const EvalRecord& r : records) {
        out << r.image << ',' << r.arch << ',' << r.width << ',' << r.depth << ',' << r.optimizer << ','
            << real(r.learning_rate) << ',' << r.epochs << ',' << r.params << ',' << real(r.bpp) << ','
            << real(bucket_bpp(r.bpp)) << ',' << real(r.mae) << ',' << real(r.mse) << ',' << real(r.psnr_db) << ','
            << real(r.ssim) << ',' << (record_timing ? real(r.train_seconds) : std::string()) << ",,\n";
    }
}

std::vector<EvalRecord> read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read CSV '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw FormatError("unexpected CSV header in '" + path.string() + "'");
    std::vector<EvalRecord> records;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 17)
            throw FormatError("CSV row has " + std::to_string(f.size()) + " fields, expected 17");
        EvalRecord r;
        r.image = f[0];
        r.arch = f[1];
        r.width = std::stoul(f[2]);
        r.depth = std::stoul(f[3]);
        r.optimizer = f[4];
        r.learning_rate = std::stod(f[5]);
        r.epochs = std::stoul(f[6]);
        r.params = std::stoul(f[7]);
        r.bpp = std::stod(f[8]);
        r.mae = std::stod(f[10]);
        r.mse = std::stod(f[11]);
        r.psnr_db = std::stod(f[12]);
        r.ssim = std::stod(f[13]);
        r.train_seconds = f[14].empty() ? 0.0 : std::stod(f[14]);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<std::filesystem::path> write_series(const std::vector<EvalRecord>& records,
                                                const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::string> archs;
    for (const EvalRecord& r : records)
        if (std::find(archs.begin(), archs.end(), r.arch) == archs.end())
            archs.push_back(r.arch);
    std::sort(archs.begin(), archs.end());

    std::vector<std::filesystem::path> written;
    for (const std::string& metric : series_metrics()) {
        const auto series = series_for(records, metric);
        for (const std::string& arch : archs) {
            const auto path = dir / ("series_" + arch + "_" + metric + ".tsv");
            std::ofstream out(path);
            if (!out)
                throw IoError("cannot write '" + path.string() + "'");
            out << "optimizer\tbucket\tcount\tmean\tstd\n";
            for (const auto& [key, points] : series) {
                if (key.first != arch)
                    continue;
                for (const SeriesPoint& p : points)
                    out << key.second << '\t' << real(p.bucket) << '\t' << p.count << '\t' << real(p.mean) << '\t'
                        << real(p.stddev) << '\n';
            }
            written.push_back(path);
        }
    }
    return written;
}

} // namespace texinr

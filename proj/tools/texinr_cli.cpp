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

// Command-line front end: select, train, decode, eval, sweep, render.

#include "texinr/corpus.hpp"
#include "texinr/decode.hpp"
#include "texinr/error.hpp"
#include "texinr/image.hpp"
#include "texinr/metrics.hpp"
#include "texinr/model_store.hpp"
#include "texinr/render.hpp"
#include "texinr/sweep.hpp"
#include "texinr/train.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace fs = std::filesystem;
using namespace texinr;

namespace {

struct NetOptions {
    std::string arch = "fourier";
    std::size_t width = 128;
    std::size_t depth = 1;
    double omega0 = 30.0;
    std::size_t n_freq = 8;
    std::uint32_t hash_levels = 8;
    std::uint32_t hash_log2_table = 12;

    void add_to(CLI::App* app)
    {
        app->add_option("--arch", arch, "Architecture: mlp, siren, fourier or hash")
            ->check(CLI::IsMember({"mlp", "siren", "fourier", "hash"}));
        app->add_option("--width", width, "Hidden layer width");
        app->add_option("--depth", depth, "Number of hidden layers")->check(CLI::Range(1, 8));
        app->add_option("--omega0", omega0, "Sine frequency scale (siren)");
        app->add_option("--n-freq", n_freq, "Octave Fourier bands (fourier)")->check(CLI::Range(1, 24));
        app->add_option("--hash-levels", hash_levels, "Hash grid levels (hash)");
        app->add_option("--hash-log2-table", hash_log2_table, "log2 of the hash table size (hash)")
            ->check(CLI::Range(1, 24));
    }

    NetworkSpec spec(std::size_t input_dim) const
    {
        NetworkSpec s = make_spec(architecture_from_string(arch), width, depth, input_dim);
        s.omega0 = omega0;
        if (auto* f = std::get_if<FourierEncoding>(&s.encoder))
            *f = FourierEncoding::octaves(n_freq);
        if (auto* h = std::get_if<HashEncoding>(&s.encoder)) {
            h->levels = hash_levels;
            h->table_size = 1u << hash_log2_table;
        }
        return s;
    }
};

std::vector<std::size_t> parse_epochs(const std::string& csv)
{
    std::vector<std::size_t> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(std::stoul(item));
    return out;
}

void print_record(const EvalRecord& r)
{
    std::printf("arch      %s\n", r.arch.c_str());
    std::printf("hidden    %zux%zu\n", r.width, r.depth);
    std::printf("params    %zu\n", r.params);
    std::printf("bpp       %.6f (bucket %.0f)\n", r.bpp, bucket_bpp(r.bpp));
    std::printf("mae       %.6f\n", r.mae);
    std::printf("mse       %.6f\n", r.mse);
    if (r.psnr_infinite())
        std::printf("psnr      inf\n");
    else
        std::printf("psnr      %.4f dB\n", r.psnr_db);
    std::printf("ssim      %.6f\n", r.ssim);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"texinr: textures as coordinate networks"};
    app.set_config("--config", "", "Read options from a TOML/INI run file");
    app.require_subcommand(1);

    // select
    auto* select = app.add_subcommand("select", "Rank a corpus by Laplacian variance and pick images");
    std::string select_dir, select_out = "manifest.tsv";
    std::size_t select_n = 25;
    select->add_option("dir", select_dir, "Directory of images")->required();
    select->add_option("-n,--count", select_n, "Number of images to select");
    select->add_option("-o,--output", select_out, "Manifest to write");

    // train
    auto* train_cmd = app.add_subcommand("train", "Overfit a network to one texture");
    NetOptions train_net;
    train_net.add_to(train_cmd);
    std::string train_image, train_out = "out", train_name, train_opt = "adam", train_snaps = "1,10,20,30,40,50";
    double train_lr = 0.0;
    std::size_t train_epochs = 50, train_levels = kDefaultMipLevels, train_batch = 0;
    std::uint64_t train_seed = 0;
    bool train_mipmap = false;
    train_cmd->add_option("image", train_image, "Texture to fit")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--optimizer", train_opt, "adam or rprop")->check(CLI::IsMember({"adam", "rprop"}));
    train_cmd->add_option("--lr", train_lr, "Learning rate (default depends on architecture)");
    train_cmd->add_option("--epochs", train_epochs, "Training epochs")->check(CLI::PositiveNumber);
    train_cmd->add_option("--seed", train_seed, "Initialization seed");
    train_cmd->add_flag("--mipmap", train_mipmap, "Fit the whole mip pyramid with a (u,v,t) network");
    train_cmd->add_option("--levels", train_levels, "Mip levels")->check(CLI::Range(1, 16));
    train_cmd->add_option("--snapshots", train_snaps, "Comma-separated snapshot epochs");
    train_cmd->add_option("--batch-size", train_batch, "Mini-batch size, 0 for full batch");
    train_cmd->add_option("--out-dir", train_out, "Output directory");
    train_cmd->add_option("--name", train_name, "Output file prefix");

    // decode
    auto* decode_cmd = app.add_subcommand("decode", "Decode a model to an image or pyramid atlas");
    std::string decode_model, decode_out = "decoded.png";
    std::size_t decode_w = 256, decode_h = 256, decode_levels = kDefaultMipLevels;
    double decode_t = -1.0;
    decode_cmd->add_option("model", decode_model, "TINR model")->required()->check(CLI::ExistingFile);
    decode_cmd->add_option("--width", decode_w, "Base width")->check(CLI::PositiveNumber);
    decode_cmd->add_option("--height", decode_h, "Base height")->check(CLI::PositiveNumber);
    decode_cmd->add_option("--t", decode_t, "Decode a single LOD of a mipmap model (default: full atlas)");
    decode_cmd->add_option("--levels", decode_levels, "Mip levels of a mipmap model")->check(CLI::Range(1, 16));
    decode_cmd->add_option("-o,--output", decode_out, "PNG to write");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Compare a model against its reference texture");
    std::string eval_model, eval_ref, eval_window = "global";
    std::size_t eval_levels = kDefaultMipLevels;
    bool eval_verbose = false;
    eval_cmd->add_option("model", eval_model, "TINR model")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("reference", eval_ref, "Reference image")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--levels", eval_levels, "Mip levels for mipmap models")->check(CLI::Range(1, 16));
    eval_cmd->add_option("--ssim-window", eval_window, "global or gaussian")
        ->check(CLI::IsMember({"global", "gaussian"}));
    eval_cmd->add_flag("-v,--verbose", eval_verbose, "Also print per-level metrics and file sizes");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Train and evaluate the architecture grid over a manifest");
    std::string sweep_manifest, sweep_out = "sweep";
    std::vector<std::string> sweep_archs{"mlp", "siren", "fourier"}, sweep_opts{"adam", "rprop"}, sweep_grid;
    std::size_t sweep_epochs = 50, sweep_levels = kDefaultMipLevels, sweep_workers = 1;
    std::uint64_t sweep_seed = 0;
    bool sweep_mipmap = false, sweep_no_timing = false, sweep_keep = false;
    sweep_cmd->add_option("manifest", sweep_manifest, "Manifest from `select` (path<TAB>lapv)")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--arch", sweep_archs, "Architectures")->delimiter(',');
    sweep_cmd->add_option("--optimizer", sweep_opts, "Optimizers")->delimiter(',');
    sweep_cmd->add_option("--grid", sweep_grid, "WIDTHxDEPTH points (default: the 8-point grid)")->delimiter(',');
    sweep_cmd->add_option("--epochs", sweep_epochs, "Training epochs")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sweep_seed, "Initialization seed");
    sweep_cmd->add_flag("--mipmap", sweep_mipmap, "Train (u,v,t) networks on mip pyramids");
    sweep_cmd->add_option("--levels", sweep_levels, "Mip levels")->check(CLI::Range(1, 16));
    sweep_cmd->add_option("--workers", sweep_workers, "Parallel training jobs")->check(CLI::PositiveNumber);
    sweep_cmd->add_flag("--no-timing", sweep_no_timing, "Leave the seconds column empty");
    sweep_cmd->add_flag("--keep-models", sweep_keep, "Write every trained model and loss curve");
    sweep_cmd->add_option("--out-dir", sweep_out, "Report directory");

    // render
    auto* render_cmd = app.add_subcommand("render", "Ray-trace a sphere textured by a model");
    std::string render_model, render_out = "sphere.png";
    RenderParams rp;
    std::vector<double> render_light{rp.light_dir.begin(), rp.light_dir.end()};
    std::vector<double> render_bg{rp.background.begin(), rp.background.end()};
    render_cmd->add_option("model", render_model, "TINR model")->required()->check(CLI::ExistingFile);
    render_cmd->add_option("-o,--output", render_out, "PNG to write");
    render_cmd->add_option("--width", rp.width, "Image width")->check(CLI::PositiveNumber);
    render_cmd->add_option("--height", rp.height, "Image height")->check(CLI::PositiveNumber);
    render_cmd->add_option("--fov", rp.fov_deg, "Vertical field of view in degrees");
    render_cmd->add_option("--distance", rp.camera_distance, "Camera distance from the sphere centre");
    render_cmd->add_option("--light", render_light, "Direction towards the light: x,y,z")->delimiter(',')->expected(3);
    render_cmd->add_option("--background", render_bg, "Background colour r,g,b in [0,1]")
        ->delimiter(',')
        ->expected(3);
    render_cmd->add_option("--texture-size", rp.texture_size, "Base texture size for LOD selection");
    render_cmd->add_option("--levels", rp.mip_levels, "Mip levels of a mipmap model")->check(CLI::Range(1, 16));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*select) {
            const CorpusIndex index = index_corpus(select_dir);
            for (const auto& [path, why] : index.skipped)
                std::cerr << "skipped " << path.string() << ": " << why << '\n';
            const auto picks = select_regular(index, select_n);
            write_manifest(picks, select_out);
            std::cout << "indexed " << index.size() << " images, selected " << picks.size() << " -> " << select_out
                      << '\n';
        }
        else if (*train_cmd) {
            TrainJob job;
            job.spec = train_net.spec(train_mipmap ? 3 : 2);
            job.optimizer = default_config(job.spec.activation, optimizer_from_string(train_opt));
            if (train_lr > 0.0)
                job.optimizer.learning_rate = train_lr;
            job.epochs = train_epochs;
            job.seed = train_seed;
            job.mipmap = train_mipmap;
            job.mip_levels = train_levels;
            job.batch_size = train_batch;
            job.snapshot_epochs.clear();
            for (std::size_t e : parse_epochs(train_snaps))
                if (e <= train_epochs)
                    job.snapshot_epochs.push_back(e);
            job.output_dir = fs::path(train_out);
            job.name = train_name.empty() ? default_job_name(job, fs::path(train_image).stem().string()) : train_name;

            const Image img = load_image(train_image);
            const TrainResult result = train(job, img);
            const EvalResult ev = evaluate(result.model, img, job.mip_levels);
            std::cout << job.name << ": " << result.epochs_completed << " epochs in " << result.seconds << " s, final loss "
                      << (result.loss_curve.empty() ? 0.0 : result.loss_curve.back()) << '\n';
            print_record(ev.record);
            if (result.diverged) {
                std::cerr << "training diverged; last good snapshot retained\n";
                return 2;
            }
        }
        else if (*decode_cmd) {
            const InrModel model = load_model(decode_model);
            Image img;
            if (model.spec.input_dim == 3 && decode_t < 0.0)
                img = pack_atlas(decode_pyramid(model, decode_w, decode_h, decode_levels));
            else if (model.spec.input_dim == 3)
                img = decode_image(model, decode_w, decode_h, decode_t);
            else
                img = decode_image(model, decode_w, decode_h);
            save_png(img, decode_out);
            std::cout << "wrote " << decode_out << " (" << img.width() << "x" << img.height() << ")\n";
        }
        else if (*eval_cmd) {
            const InrModel model = load_model(eval_model);
            const Image ref = load_image(eval_ref);
            SsimConfig cfg;
            cfg.window = eval_window == "global" ? SsimWindow::global : SsimWindow::gaussian;
            const EvalResult ev = evaluate(model, ref, eval_levels, cfg);
            print_record(ev.record);
            if (eval_verbose) {
                for (std::size_t l = 0; l < ev.levels.size(); ++l) {
                    const auto& lm = ev.levels[l];
                    std::printf("level %zu  %zux%zu  mae %.6f  mse %.6f  psnr %.4f  ssim %.6f\n", l, lm.width,
                                lm.height, lm.mae, lm.mse, lm.psnr_db, lm.ssim);
                }
                std::printf("payload   %llu bits\n", static_cast<unsigned long long>(asset_size_bits(eval_model)));
                std::printf("file      %llu bytes (header %zu, crc 4)\n",
                            static_cast<unsigned long long>(fs::file_size(eval_model)), header_size(model.spec));
            }
        }
        else if (*sweep_cmd) {
            SweepConfig cfg;
            const fs::path manifest_dir = fs::path(sweep_manifest).parent_path();
            for (const CorpusEntry& e : read_manifest(sweep_manifest))
                cfg.images.push_back(e.path.is_absolute() || fs::exists(e.path) ? e.path : manifest_dir / e.path);
            cfg.architectures.clear();
            for (const auto& a : sweep_archs)
                cfg.architectures.push_back(architecture_from_string(a));
            cfg.optimizers.clear();
            for (const auto& o : sweep_opts)
                cfg.optimizers.push_back(optimizer_from_string(o));
            if (!sweep_grid.empty()) {
                cfg.grid.clear();
                for (const auto& g : sweep_grid) {
                    const auto x = g.find('x');
                    if (x == std::string::npos)
                        throw ConfigError("grid point '" + g + "' is not WIDTHxDEPTH");
                    cfg.grid.push_back({std::stoul(g.substr(0, x)), std::stoul(g.substr(x + 1))});
                }
            }
            cfg.epochs = sweep_epochs;
            cfg.seed = sweep_seed;
            cfg.mipmap = sweep_mipmap;
            cfg.mip_levels = sweep_levels;
            cfg.workers = sweep_workers;
            cfg.record_timing = !sweep_no_timing;
            fs::create_directories(sweep_out);
            if (sweep_keep)
                cfg.job_dir = fs::path(sweep_out) / "models";

            std::cout << "running " << job_count(cfg) << " jobs\n";
            const SweepReport report = run_sweep(cfg);
            write_csv(report.records, fs::path(sweep_out) / "results.csv", cfg.record_timing);
            write_series(report.records, sweep_out);
            for (const auto& f : report.failures)
                std::cerr << "failed " << f.job << ": " << f.error << '\n';
            std::cout << report.records.size() << " records, " << report.failures.size() << " failures -> "
                      << sweep_out << '\n';
        }
        else if (*render_cmd) {
            const InrModel model = load_model(render_model);
            std::copy(render_light.begin(), render_light.end(), rp.light_dir.begin());
            std::copy(render_bg.begin(), render_bg.end(), rp.background.begin());
            const Image img = render_sphere(model, rp);
            save_png(img, render_out);
            std::cout << "wrote " << render_out << '\n';
        }
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

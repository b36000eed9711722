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
#include "texinr/sweep.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace texinr;
using namespace texinr::testing;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SweepConfig tiny_sweep(const std::filesystem::path& dir)
{
    save_png(woven_texture(12, 12), dir / "a.png");
    save_png(checkerboard(12, 3), dir / "b.png");
    SweepConfig cfg;
    cfg.images = {dir / "a.png", dir / "b.png"};
    cfg.architectures = {Architecture::mlp, Architecture::fourier};
    cfg.grid = {{8, 1}, {16, 1}};
    cfg.optimizers = {OptimizerKind::adam, OptimizerKind::rprop};
    cfg.epochs = 3;
    cfg.record_timing = false;
    return cfg;
}

EvalRecord record(std::string arch, double bpp, double psnr)
{
    EvalRecord r;
    r.image = "x";
    r.arch = std::move(arch);
    r.optimizer = "adam";
    r.bpp = bpp;
    r.psnr_db = psnr;
    return r;
}

} // namespace

TEST_CASE("sweep runs every job in manifest order")
{
    const auto dir = temp_dir("sweep_order");
    SweepConfig cfg = tiny_sweep(dir);
    CHECK(job_count(cfg) == 16);
    const SweepReport r = run_sweep(cfg);
    CHECK(r.failures.empty());
    REQUIRE(r.records.size() == 16);
    CHECK(r.records[0].image == "a");
    CHECK(r.records[0].arch == "mlp");
    CHECK(r.records[0].width == 8);
    CHECK(r.records[0].optimizer == "adam");
    CHECK(r.records[1].optimizer == "rprop");
    CHECK(r.records[2].width == 16);
    CHECK(r.records[4].arch == "fourier");
    CHECK(r.records[8].image == "b");
}

TEST_CASE("worker count does not change the results")
{
    const auto dir = temp_dir("sweep_workers");
    SweepConfig cfg = tiny_sweep(dir);
    write_csv(run_sweep(cfg).records, dir / "one.csv", false);
    cfg.workers = 3;
    write_csv(run_sweep(cfg).records, dir / "three.csv", false);
    CHECK(slurp(dir / "one.csv") == slurp(dir / "three.csv"));
}

TEST_CASE("csv has a header, one row per record, and reads back")
{
    const auto dir = temp_dir("sweep_csv");
    const SweepReport r = run_sweep(tiny_sweep(dir));
    write_csv(r.records, dir / "r.csv", false);
    std::ifstream in(dir / "r.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == kCsvHeader);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.substr(line.size() - 3) == ",,,"); // empty seconds, lpips, vmaf
    }
    CHECK(rows == r.records.size());

    const auto back = read_csv(dir / "r.csv");
    REQUIRE(back.size() == r.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].psnr_db == r.records[i].psnr_db);
        CHECK(back[i].bpp == r.records[i].bpp);
        CHECK(back[i].params == r.records[i].params);
    }
    // series re-derived from the CSV match those from the live records
    for (const std::string& m : series_metrics()) {
        const auto a = series_for(r.records, m), b = series_for(back, m);
        REQUIRE(a.size() == b.size());
        for (const auto& [key, pts] : a) {
            REQUIRE(b.count(key));
            REQUIRE(b.at(key).size() == pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i)
                CHECK(b.at(key)[i].mean == pts[i].mean);
        }
    }
}

TEST_CASE("series bucket statistics")
{
    const std::vector<EvalRecord> recs{record("siren", 1.2, 30.0), record("siren", 2.9, 34.0),
                                       record("siren", 5.5, 40.0), record("mlp", 3.1, 25.0)};
    const auto s = series_for(recs, "psnr");
    const auto& siren = s.at({"siren", "adam"});
    REQUIRE(siren.size() == 2);
    CHECK(siren[0].bucket == 2.0);
    CHECK(siren[0].count == 2);
    CHECK(siren[0].mean == 32.0);
    CHECK(siren[0].stddev == doctest::Approx(std::sqrt(8.0)));
    CHECK(siren[1].bucket == 6.0);
    CHECK(siren[1].count == 1);
    CHECK(siren[1].mean == 40.0);
    CHECK(siren[1].stddev == 0.0);
    CHECK(s.at({"mlp", "adam"})[0].bucket == 4.0);
    CHECK_THROWS_AS(series_for(recs, "lpips"), ConfigError);
}

TEST_CASE("series files: one per architecture and metric")
{
    const auto dir = temp_dir("sweep_series");
    const std::vector<EvalRecord> recs{record("siren", 1.2, 30.0), record("mlp", 3.1, 25.0)};
    const auto files = write_series(recs, dir);
    CHECK(files.size() == 2 * series_metrics().size());
    std::ifstream in(dir / "series_siren_psnr.tsv");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "optimizer\tbucket\tcount\tmean\tstd");
    CHECK(row == "adam\t2\t1\t30\t0");
}

TEST_CASE("a broken image is reported as a failure, not thrown")
{
    const auto dir = temp_dir("sweep_fail");
    SweepConfig cfg = tiny_sweep(dir);
    std::ofstream(dir / "bad.png") << "junk";
    cfg.images.push_back(dir / "bad.png");
    cfg.architectures = {Architecture::mlp};
    cfg.grid = {{8, 1}};
    cfg.optimizers = {OptimizerKind::adam};
    const SweepReport r = run_sweep(cfg);
    CHECK(r.records.size() == 2);
    CHECK(!r.failures.empty());
}

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

#include "texinr/model_store.hpp"
#include "texinr/sweep.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace texinr;
using namespace texinr::testing;

namespace {

int run_cli(const std::string& args, const std::filesystem::path& log)
{
    const std::string cmd = std::string("\"") + TEXINR_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string q(const std::filesystem::path& p)
{
    return "\"" + p.string() + "\"";
}

} // namespace

TEST_CASE("cli: train, decode, eval and render")
{
    const auto dir = temp_dir("cli_pipeline");
    save_png(woven_texture(16, 16), dir / "tex.png");
    const auto log = dir / "log.txt";

    REQUIRE(run_cli("train " + q(dir / "tex.png") + " --arch fourier --width 16 --depth 1 --n-freq 2 --epochs 4 "
                        "--snapshots 2,4 --name t --out-dir " + q(dir),
                    log) == 0);
    CHECK(std::filesystem::exists(dir / "t.tinr"));
    CHECK(std::filesystem::exists(dir / "t_e2.png"));
    CHECK(std::filesystem::exists(dir / "t_loss.tsv"));

    REQUIRE(run_cli("decode " + q(dir / "t.tinr") + " --width 16 --height 16 -o " + q(dir / "out.png"), log) == 0);
    CHECK(load_image(dir / "out.png").width() == 16);

    REQUIRE(run_cli("eval " + q(dir / "t.tinr") + " " + q(dir / "tex.png") + " -v", log) == 0);
    const std::string report = slurp(log);
    CHECK(report.find("psnr") != std::string::npos);
    CHECK(report.find("bpp") != std::string::npos);

    REQUIRE(run_cli("render " + q(dir / "t.tinr") + " --width 24 --height 24 -o " + q(dir / "sphere.png"), log) == 0);
    CHECK(load_image(dir / "sphere.png").height() == 24);
}

TEST_CASE("cli: select and sweep from a manifest")
{
    const auto dir = temp_dir("cli_sweep");
    std::filesystem::create_directories(dir / "corpus");
    save_png(checkerboard(12, 3), dir / "corpus" / "a.png");
    save_png(woven_texture(12, 12), dir / "corpus" / "b.png");
    save_png(Image::filled(12, 12, {0.3, 0.3, 0.3}), dir / "corpus" / "c.png");
    const auto log = dir / "log.txt";

    REQUIRE(run_cli("select " + q(dir / "corpus") + " -n 2 -o " + q(dir / "m.tsv"), log) == 0);
    REQUIRE(run_cli("sweep " + q(dir / "m.tsv") + " --arch mlp --optimizer adam --grid 8x1 --epochs 2 --no-timing "
                        "--out-dir " + q(dir / "out"),
                    log) == 0);
    const auto records = read_csv(dir / "out" / "results.csv");
    CHECK(records.size() == 2);
    CHECK(std::filesystem::exists(dir / "out" / "series_mlp_psnr.tsv"));
}

TEST_CASE("cli: options from a run file")
{
    const auto dir = temp_dir("cli_config");
    save_png(woven_texture(16, 16), dir / "tex.png");
    std::ofstream(dir / "run.toml") << "[train]\narch = \"siren\"\nwidth = 8\ndepth = 1\nepochs = 3\nsnapshots = \"3\"\n"
                                       "name = \"cfg\"\nout-dir = \"" << dir.string() << "\"\n";
    REQUIRE(run_cli("--config " + q(dir / "run.toml") + " train " + q(dir / "tex.png"), dir / "log.txt") == 0);
    const InrModel m = load_model(dir / "cfg.tinr");
    CHECK(m.spec.hidden_width == 8);
    CHECK(m.spec.activation == ActivationKind::sine);
}

TEST_CASE("cli: errors exit non-zero")
{
    const auto dir = temp_dir("cli_errors");
    std::ofstream(dir / "bad.tinr") << "nope";
    CHECK(run_cli("decode " + q(dir / "bad.tinr") + " -o " + q(dir / "x.png"), dir / "log.txt") == 1);
    CHECK(slurp(dir / "log.txt").find("magic") != std::string::npos);
    CHECK(run_cli("train", dir / "log.txt") != 0);
}

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

#include "texinr/corpus.hpp"

#include "texinr/error.hpp"
#include "texinr/image.hpp"
#include "texinr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace texinr {

CorpusIndex index_corpus(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir))
        throw IoError("'" + dir.string() + "' is not a directory");

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file())
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    CorpusIndex index;
    for (const auto& file : files) {
        try {
            index.entries.push_back({file, lapv(load_image(file))});
        }
        catch (const Error& e) {
            index.skipped.emplace_back(file, e.what());
        }
    }
    if (index.entries.empty())
        throw IoError("no readable images in '" + dir.string() + "'");
    sort_index(index);
    return index;
}

void sort_index(CorpusIndex& index)
{
    std::stable_sort(index.entries.begin(), index.entries.end(), [](const CorpusEntry& a, const CorpusEntry& b) {
        if (a.lapv != b.lapv)
            return a.lapv < b.lapv;
        return a.path < b.path;
    });
}

std::size_t regular_rank(std::size_t k, std::size_t n, std::size_t size)
{
    // Midpoint of the k-th of n equal-width quantile bins, truncated to a rank.
    return static_cast<std::size_t>(std::floor((static_cast<double>(k) + 0.5) * static_cast<double>(size) /
                                               static_cast<double>(n)));
}

std::vector<CorpusEntry> select_regular(const CorpusIndex& index, std::size_t n)
{
    const std::size_t size = index.size();
    if (n == 0 || n > size)
        throw ConfigError("cannot select " + std::to_string(n) + " images from a corpus of " + std::to_string(size));

    std::vector<bool> used(size, false);
    std::vector<CorpusEntry> picks;
    std::size_t last = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t rank = std::max(regular_rank(k, n, size), picks.empty() ? 0 : last + 1);
        while (rank < size && used[rank])
            ++rank;
        if (rank >= size)
            throw ConfigError("rank selection ran past the end of the corpus");
        used[rank] = true;
        last = rank;
        picks.push_back(index.entries[rank]);
    }
    return picks;
}

void write_manifest(const std::vector<CorpusEntry>& entries, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write manifest '" + path.string() + "'");
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& e : entries)
        out << e.path.string() << '\t' << e.lapv << '\n';
}

std::vector<CorpusEntry> read_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read manifest '" + path.string() + "'");
    std::vector<CorpusEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        CorpusEntry e;
        const auto tab = line.find('\t');
        e.path = line.substr(0, tab);
        if (tab != std::string::npos)
            e.lapv = std::stod(line.substr(tab + 1));
        entries.push_back(std::move(e));
    }
    return entries;
}

} // namespace texinr

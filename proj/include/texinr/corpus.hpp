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

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace texinr {

struct CorpusEntry {
    std::filesystem::path path;
    double lapv = 0.0;
};

/// Corpus images sorted ascending by Laplacian variance (ties by path).
struct CorpusIndex {
    std::vector<CorpusEntry> entries;
    /// Files that could not be decoded, with the reason.
    std::vector<std::pair<std::filesystem::path, std::string>> skipped;

    std::size_t size() const { return entries.size(); }
};

/// Scores every regular file in `dir` (non-recursive). Unreadable files are
/// recorded in `skipped`. Throws IoError when no image could be read.
CorpusIndex index_corpus(const std::filesystem::path& dir);

/// Sorts entries by (lapv, path).
void sort_index(CorpusIndex& index);

/// Rank of the k-th of n picks over a corpus of `size`: floor((k + 0.5) * size / n).
std::size_t regular_rank(std::size_t k, std::size_t n, std::size_t size);

/// Picks n entries at regular quantile intervals of the lapv distribution.
/// A rank already taken advances to the next unused one.
std::vector<CorpusEntry> select_regular(const CorpusIndex& index, std::size_t n);

/// Tab-separated manifest: path<TAB>lapv per line.
void write_manifest(const std::vector<CorpusEntry>& entries, const std::filesystem::path& path);
std::vector<CorpusEntry> read_manifest(const std::filesystem::path& path);

} // namespace texinr

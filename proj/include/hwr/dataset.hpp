// Copyright 2026 The dhbn-hwr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Word-image datasets described by a tab-separated manifest.

#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hwr/error.hpp"
#include "hwr/image.hpp"
#include "hwr/text_io.hpp"

namespace hwr {

inline constexpr char kFolds[] = {'a', 'b', 'c', 'd'};

inline bool valid_fold(char f) { return f >= 'a' && f <= 'd'; }

struct WordSample {
    std::string word_id;
    std::string label;
    std::filesystem::path image; // resolved against the dataset root
    char fold = 'a';
    std::optional<int> glyph_count; // ground truth, known for generated corpora
};

struct Dataset {
    std::filesystem::path root;
    std::vector<WordSample> samples;

    /// Class labels in order of first appearance.
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        std::set<std::string> seen;
        for (const auto& s : samples)
            if (seen.insert(s.label).second) out.push_back(s.label);
        return out;
    }

    /// Indices of the samples whose fold is in `folds`, in manifest order.
    std::vector<std::size_t> select(const std::string& folds) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (folds.find(samples[i].fold) != std::string::npos) out.push_back(i);
        return out;
    }
};

/// Checks and normalizes a fold set such as "ab": letters a-d, no repeats,
/// returned sorted.
inline std::string normalize_folds(const std::string& folds) {
    std::string out;
    for (char f : folds) {
        if (!valid_fold(f)) fail(ErrorCode::InvalidConfig, std::string("unknown fold '") + f + "'");
        if (out.find(f) != std::string::npos) fail(ErrorCode::InvalidConfig, std::string("fold '") + f + "' repeated");
        out.push_back(f);
    }
    if (out.empty()) fail(ErrorCode::InvalidConfig, "empty fold set");
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out(1);
    for (char c : line) {
        if (c == '\t')
            out.emplace_back();
        else
            out.back().push_back(c);
    }
    return out;
}

} // namespace detail

/**
 * Reads `word_id<TAB>label<TAB>relative-image-path<TAB>fold` lines. Blank
 * lines and '#' comments are skipped. Every image is opened and parsed.
 * When `truth.tsv` (word_id<TAB>glyph count) sits next to the manifest its
 * counts are attached to the samples.
 */
inline Dataset ingest(const std::filesystem::path& root, const std::filesystem::path& manifest) {
    if (!std::filesystem::exists(manifest)) fail(ErrorCode::MalformedManifest, "no manifest " + manifest.string());
    Dataset ds;
    ds.root = root;
    std::map<std::string, std::size_t> ids;
    int line_no = 0;
    for (std::string line : textio::split_lines(textio::read_file(manifest))) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string where = manifest.filename().string() + ":" + std::to_string(line_no);
        const auto f = detail::split_tabs(line);
        if (f.size() != 4) fail(ErrorCode::MalformedManifest, where + ": expected 4 tab-separated fields");
        if (f[0].empty() || f[1].empty() || f[2].empty())
            fail(ErrorCode::MalformedManifest, where + ": empty field");
        if (f[3].size() != 1 || !valid_fold(f[3][0]))
            fail(ErrorCode::MalformedManifest, where + ": unknown fold tag '" + f[3] + "'");
        if (!ids.emplace(f[0], ds.samples.size()).second)
            fail(ErrorCode::MalformedManifest, where + ": duplicate word_id '" + f[0] + "'");
        WordSample s{f[0], f[1], root / f[2], f[3][0], std::nullopt};
        if (!std::filesystem::exists(s.image)) fail(ErrorCode::MissingImage, s.image.string());
        load_image(s.image);
        ds.samples.push_back(std::move(s));
    }

    const auto truth = manifest.parent_path() / "truth.tsv";
    if (std::filesystem::exists(truth)) {
        for (const auto& line : textio::split_lines(textio::read_file(truth))) {
            if (line.empty() || line[0] == '#') continue;
            const auto f = detail::split_tabs(line);
            if (f.size() != 2) fail(ErrorCode::MalformedManifest, "truth.tsv: expected word_id<TAB>count");
            const auto it = ids.find(f[0]);
            if (it == ids.end()) fail(ErrorCode::MalformedManifest, "truth.tsv: unknown word_id '" + f[0] + "'");
            ds.samples[it->second].glyph_count = static_cast<int>(textio::parse_int(f[1], "truth.tsv"));
        }
    }
    return ds;
}

} // namespace hwr

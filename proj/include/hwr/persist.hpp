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

// On-disk layout of a trained model:
//
//   <dir>/config.txt        DHBN-CF v1, then the pipeline config
//   <dir>/codebook.txt      DHBN-CB v1 K d ...
//   <dir>/lexicon.tsv       DHBN-LX v1 n, then label<TAB>model-path lines
//   <dir>/models/NNNN.txt   DHBN-WM v1 ... one per lexicon entry
//
// Every file ends in a `checksum fnv1a64` line.

#pragma once

#include <cstdio>
#include <filesystem>
#include <string>

#include "hwr/config.hpp"
#include "hwr/dhbn.hpp"
#include "hwr/error.hpp"
#include "hwr/pipeline.hpp"
#include "hwr/quantize.hpp"
#include "hwr/text_io.hpp"

namespace hwr {

inline constexpr const char* kConfigMagic = "DHBN-CF";
inline constexpr const char* kLexiconMagic = "DHBN-LX";
inline constexpr const char* kFormatVersion = "v1";

namespace detail {

/// Checks `<magic> v1 ...` on the first line before the checksum, so a file
/// from another format version reports VersionMismatch.
inline std::string open_sealed(const std::string& content, const std::string& magic, const std::string& context) {
    const auto first = content.substr(0, content.find('\n'));
    const auto head = textio::split_ws(first);
    if (head.size() < 2 || head[0] != magic) fail(ErrorCode::IoFailure, context + ": not a " + magic + " file");
    if (head[1] != kFormatVersion)
        fail(ErrorCode::VersionMismatch, context + ": version " + head[1] + ", expected " + kFormatVersion);
    return textio::unseal(content, context);
}

inline std::string read_existing(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) fail(ErrorCode::IoFailure, "missing " + path.string());
    return textio::read_file(path);
}

} // namespace detail

inline void save_model(const std::filesystem::path& dir, const TrainedModel& model) {
    textio::write_file(dir / "config.txt",
                       textio::seal(std::string(kConfigMagic) + " " + kFormatVersion + "\n" + format_config(model.config)));
    textio::write_file(dir / "codebook.txt", quantize::serialize_codebook(model.codebook));
    std::string lex = std::string(kLexiconMagic) + " " + kFormatVersion + " " + std::to_string(model.lexicon.size()) + "\n";
    char name[32];
    for (std::size_t i = 0; i < model.lexicon.size(); ++i) {
        const auto& e = model.lexicon.entries()[i];
        if (e.label.find_first_of("\t\n") != std::string::npos)
            fail(ErrorCode::IoFailure, "label '" + e.label + "' contains a tab or newline");
        std::snprintf(name, sizeof name, "models/%04zu.txt", i);
        textio::write_file(dir / name, dhbn::serialize_model(e.model));
        lex += e.label + "\t" + name + "\n";
    }
    textio::write_file(dir / "lexicon.tsv", textio::seal(lex));
}

inline TrainedModel load_model(const std::filesystem::path& dir) {
    TrainedModel model;
    {
        const std::string body = detail::open_sealed(detail::read_existing(dir / "config.txt"), kConfigMagic, "config.txt");
        try {
            model.config = parse_config(body.substr(body.find('\n') + 1));
        } catch (const Error& e) {
            fail(ErrorCode::IoFailure, std::string("config.txt: ") + e.what());
        }
    }
    model.codebook = quantize::parse_codebook(detail::read_existing(dir / "codebook.txt"), "codebook.txt");

    const std::string body = detail::open_sealed(detail::read_existing(dir / "lexicon.tsv"), kLexiconMagic, "lexicon.tsv");
    const auto lines = textio::split_lines(body);
    const long count = textio::parse_int(textio::split_ws(lines[0]).at(2), "lexicon.tsv");
    if (count != static_cast<long>(lines.size()) - 1) fail(ErrorCode::IoFailure, "lexicon.tsv: entry count mismatch");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto tab = lines[i].find('\t');
        if (tab == std::string::npos) fail(ErrorCode::IoFailure, "lexicon.tsv: expected label<TAB>path");
        const std::string path = lines[i].substr(tab + 1);
        auto m = dhbn::parse_model(detail::read_existing(dir / path), path);
        if (m.n_symbols != model.codebook.size())
            fail(ErrorCode::IoFailure, path + ": " + std::to_string(m.n_symbols) + " symbols, codebook has " +
                                           std::to_string(model.codebook.size()));
        try {
            model.lexicon.add(lines[i].substr(0, tab), std::move(m));
        } catch (const Error& e) {
            fail(ErrorCode::IoFailure, std::string("lexicon.tsv: ") + e.what());
        }
    }
    return model;
}

} // namespace hwr

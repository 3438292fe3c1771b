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

// Helpers shared by the persisted text formats: lossless real formatting,
// whitespace tokenizing, and the trailing checksum line.

#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hwr/error.hpp"

namespace hwr::textio {

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// 17 significant digits round-trips every finite double.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_real(const std::string& token, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size() || errno == ERANGE)
        fail(ErrorCode::IoFailure, context + ": bad number '" + token + "'");
    return v;
}

inline long parse_int(const std::string& token, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(token.c_str(), &end, 10);
    if (token.empty() || end != token.c_str() + token.size() || errno == ERANGE)
        fail(ErrorCode::IoFailure, context + ": bad integer '" + token + "'");
    return v;
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_lines(const std::string& body) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : body) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline std::string checksum_line(std::string_view body) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "checksum fnv1a64 %016llx",
                  static_cast<unsigned long long>(fnv1a64(body)));
    return buf;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoFailure, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view data) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoFailure, "cannot write " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) fail(ErrorCode::IoFailure, "short write to " + path.string());
}

/// Appends the checksum line to a body whose lines all end in '\n'.
inline std::string seal(const std::string& body) {
    return body + checksum_line(body) + "\n";
}

/// Splits off and verifies the trailing checksum line; returns the body.
inline std::string unseal(const std::string& content, const std::string& context) {
    std::string trimmed = content;
    if (!trimmed.empty() && trimmed.back() == '\n') trimmed.pop_back();
    const auto nl = trimmed.rfind('\n');
    if (nl == std::string::npos) fail(ErrorCode::ChecksumMismatch, context + ": no checksum line");
    std::string body = trimmed.substr(0, nl + 1);
    const std::string last = trimmed.substr(nl + 1);
    if (last != checksum_line(body)) fail(ErrorCode::ChecksumMismatch, context);
    return body;
}

} // namespace hwr::textio

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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hwr {

enum class ErrorCode {
    // imaging
    MissingFile,
    UnsupportedFormat,
    MalformedHeader,
    MalformedImage,
    EmptyImage,
    InvalidWidth,
    NoForeground,
    DegenerateBlock,
    // features
    InvalidOrder,
    // quantize
    TooFewVectors,
    DimensionMismatch,
    // dhbn
    InvalidCounts,
    SymbolOutOfRange,
    EmptySequence,
    ImpossibleSequence,
    NoSequences,
    EmptyLexicon,
    DuplicateLabel,
    // harness
    MalformedManifest,
    MissingImage,
    ClassTooSmall,
    EmptyEvalSet,
    InvalidConfig,
    InvalidSweepValue,
    IoFailure,
    VersionMismatch,
    ChecksumMismatch,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedImage: return "MalformedImage";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::InvalidWidth: return "InvalidWidth";
    case ErrorCode::NoForeground: return "NoForeground";
    case ErrorCode::DegenerateBlock: return "DegenerateBlock";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::TooFewVectors: return "TooFewVectors";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::ImpossibleSequence: return "ImpossibleSequence";
    case ErrorCode::NoSequences: return "NoSequences";
    case ErrorCode::EmptyLexicon: return "EmptyLexicon";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
    case ErrorCode::MissingImage: return "MissingImage";
    case ErrorCode::ClassTooSmall: return "ClassTooSmall";
    case ErrorCode::EmptyEvalSet: return "EmptyEvalSet";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidSweepValue: return "InvalidSweepValue";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    }
    return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw Error(code, detail);
}

} // namespace hwr

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

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "hwr/error.hpp"
#include "hwr/text_io.hpp"

namespace hwr {

/**
 * Rectangular bitmap, row-major, true = foreground ink.
 *
 * Dimensions are given rows first everywhere in this library:
 * BinaryImage(height, width) and at(row, col).
 */
class BinaryImage {
public:
    BinaryImage() = default;

    BinaryImage(int height, int width, bool fill = false) : height_(height), width_(width) {
        if (height < 1 || width < 1)
            fail(ErrorCode::MalformedHeader, "image dimensions must be positive");
        pixels_.assign(static_cast<std::size_t>(height) * width, fill ? 1 : 0);
    }

    int height() const { return height_; }
    int width() const { return width_; }
    bool empty_shape() const { return pixels_.empty(); }

    bool at(int row, int col) const { return pixels_[index(row, col)] != 0; }
    void set(int row, int col, bool value) { pixels_[index(row, col)] = value ? 1 : 0; }

    bool contains(int row, int col) const {
        return row >= 0 && row < height_ && col >= 0 && col < width_;
    }

    std::size_t foreground_count() const {
        std::size_t n = 0;
        for (auto p : pixels_) n += p;
        return n;
    }

    /// Sub-image of rows [row0, row0+h) and columns [col0, col0+w).
    BinaryImage crop(int row0, int col0, int h, int w) const {
        BinaryImage out(h, w);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) out.set(r, c, at(row0 + r, col0 + c));
        return out;
    }

    /// Quarter turn counter-clockwise.
    BinaryImage rotated90() const {
        BinaryImage out(width_, height_);
        for (int r = 0; r < height_; ++r)
            for (int c = 0; c < width_; ++c) out.set(width_ - 1 - c, r, at(r, c));
        return out;
    }

    std::span<const std::uint8_t> pixels() const { return pixels_; }

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int height_ = 0;
    int width_ = 0;
    std::vector<std::uint8_t> pixels_;
};

namespace detail {

class PnmReader {
public:
    PnmReader(std::string data, std::string name) : data_(std::move(data)), name_(std::move(name)) {}

    std::string magic() {
        if (data_.size() < 2 || data_[0] != 'P') fail(ErrorCode::UnsupportedFormat, name_ + ": not a PNM file");
        pos_ = 2;
        return data_.substr(0, 2);
    }

    long header_int() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) ++pos_;
        if (start == pos_) {
            if (pos_ < data_.size() && data_[pos_] == '-')
                fail(ErrorCode::MalformedHeader, name_ + ": negative header value");
            fail(ErrorCode::MalformedHeader, name_ + ": expected header integer");
        }
        if (pos_ - start > 9) fail(ErrorCode::MalformedHeader, name_ + ": header value too large");
        return std::stol(data_.substr(start, pos_ - start));
    }

    /// Raw formats: exactly one whitespace byte separates header and raster.
    void end_of_header() {
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_])))
            fail(ErrorCode::MalformedHeader, name_ + ": missing whitespace after header");
        ++pos_;
    }

    int plain_bit() {
        skip_space_and_comments();
        if (pos_ >= data_.size()) fail(ErrorCode::MalformedImage, name_ + ": truncated raster");
        const char c = data_[pos_++];
        if (c != '0' && c != '1') fail(ErrorCode::MalformedImage, name_ + ": bad PBM pixel");
        return c - '0';
    }

    long plain_value() {
        skip_space_and_comments();
        if (pos_ >= data_.size()) fail(ErrorCode::MalformedImage, name_ + ": truncated raster");
        const std::size_t start = pos_;
        while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) ++pos_;
        if (start == pos_) fail(ErrorCode::MalformedImage, name_ + ": bad PGM pixel");
        return std::stol(data_.substr(start, std::min<std::size_t>(pos_ - start, 9)));
    }

    std::uint8_t raw_byte() {
        if (pos_ >= data_.size()) fail(ErrorCode::MalformedImage, name_ + ": truncated raster");
        return static_cast<std::uint8_t>(data_[pos_++]);
    }

private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string data_;
    std::string name_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Reads a PBM/PGM file (P1, P2, P4 or P5). Gray levels below half of the
/// 8-bit range are foreground (dark ink on white paper).
inline BinaryImage load_image(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        fail(ErrorCode::MissingFile, path.string());
    detail::PnmReader rd(textio::read_file(path), path.string());
    const std::string magic = rd.magic();
    const bool bitmap = magic == "P1" || magic == "P4";
    if (!bitmap && magic != "P2" && magic != "P5")
        fail(ErrorCode::UnsupportedFormat, path.string() + ": magic " + magic);

    const long width = rd.header_int();
    const long height = rd.header_int();
    if (width <= 0 || height <= 0)
        fail(ErrorCode::MalformedHeader, path.string() + ": non-positive dimensions");
    long maxval = 1;
    if (!bitmap) {
        maxval = rd.header_int();
        if (maxval <= 0 || maxval > 65535) fail(ErrorCode::MalformedHeader, path.string() + ": bad maxval");
    }
    if (magic == "P4" || magic == "P5") rd.end_of_header();

    BinaryImage img(static_cast<int>(height), static_cast<int>(width));
    auto gray_is_ink = [maxval](long v) { return v * 255 < 128 * maxval; };

    for (int r = 0; r < height; ++r) {
        if (magic == "P4") {
            std::uint8_t byte = 0;
            for (int c = 0; c < width; ++c) {
                if (c % 8 == 0) byte = rd.raw_byte();
                img.set(r, c, (byte >> (7 - c % 8)) & 1);
            }
            continue;
        }
        for (int c = 0; c < width; ++c) {
            if (magic == "P1") {
                img.set(r, c, rd.plain_bit() == 1);
            } else if (magic == "P2") {
                img.set(r, c, gray_is_ink(rd.plain_value()));
            } else {
                long v = rd.raw_byte();
                if (maxval > 255) v = (v << 8) | rd.raw_byte();
                img.set(r, c, gray_is_ink(v));
            }
        }
    }
    return img;
}

/// Writes an 8-bit binary PGM (P5) from a row-major gray raster.
inline void write_pgm(const std::filesystem::path& path, int height, int width,
                      std::span<const std::uint8_t> gray) {
    std::string data = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    data.append(reinterpret_cast<const char*>(gray.data()), gray.size());
    textio::write_file(path, data);
}

/// Foreground is written black (0), background white (255).
inline void save_image(const std::filesystem::path& path, const BinaryImage& img) {
    std::vector<std::uint8_t> gray(img.pixels().size());
    for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = img.pixels()[i] ? 0 : 255;
    write_pgm(path, img.height(), img.width(), gray);
}

} // namespace hwr

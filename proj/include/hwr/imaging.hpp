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

// Word image preprocessing and projection-profile segmentation into
// character blocks, each cut into a frames x cells grid.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "hwr/error.hpp"
#include "hwr/image.hpp"

namespace hwr::imaging {

struct ImagingConfig {
    int smooth_width = 5;
    double valley_frac = 0.05;
    double diacritic_area_ratio = 0.08;
    int canvas_height = 100;
    int canvas_width = 200;
    int frames = 3;
    int cells = 2;
};

/// Per-column ink mass. Unsmoothed values are integral counts.
struct ProjectionHistogram {
    std::vector<double> values;
};

/// Half-open column range [start, end).
struct Interval {
    int start = 0;
    int end = 0;
    int width() const { return end - start; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct SegmentBounds {
    std::vector<Interval> intervals;
};

struct Block {
    Interval columns;
    int frames = 0;
    int cells = 0;
    std::vector<BinaryImage> grid; // frame-major: grid[f * cells + c]

    const BinaryImage& cell(int frame, int c) const { return grid[static_cast<std::size_t>(frame * cells + c)]; }
};

struct CellGrid {
    int frames_per_block = 0;
    int cells_per_frame = 0;
    std::vector<Block> blocks;
};

struct BoundingBox {
    int row0 = 0, col0 = 0, rows = 0, cols = 0;
};

inline BoundingBox foreground_bbox(const BinaryImage& img) {
    int r0 = img.height(), r1 = -1, c0 = img.width(), c1 = -1;
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            if (img.at(r, c)) {
                r0 = std::min(r0, r);
                r1 = std::max(r1, r);
                c0 = std::min(c0, c);
                c1 = std::max(c1, c);
            }
    if (r1 < 0) fail(ErrorCode::EmptyImage, "no foreground pixels");
    return {r0, c0, r1 - r0 + 1, c1 - c0 + 1};
}

/// Nearest-neighbour rescale sampling each target pixel centre.
inline BinaryImage resize_nearest(const BinaryImage& img, int target_h, int target_w) {
    BinaryImage out(target_h, target_w);
    const long h = img.height(), w = img.width();
    for (int r = 0; r < target_h; ++r) {
        const int sr = static_cast<int>((2L * r + 1) * h / (2L * target_h));
        for (int c = 0; c < target_w; ++c) {
            const int sc = static_cast<int>((2L * c + 1) * w / (2L * target_w));
            out.set(r, c, img.at(sr, sc));
        }
    }
    return out;
}

/// Crops blank margins, then rescales to target_h rows x target_w columns.
inline BinaryImage preprocess(const BinaryImage& img, int target_h = 100, int target_w = 200) {
    const BoundingBox bb = foreground_bbox(img);
    const BinaryImage tight = img.crop(bb.row0, bb.col0, bb.rows, bb.cols);
    if (tight.height() == target_h && tight.width() == target_w) return tight;
    return resize_nearest(tight, target_h, target_w);
}

/// 8-connected component labels (0 = background, components numbered from 1
/// in raster order of their first pixel) and the area of each component.
struct Components {
    std::vector<int> labels;
    std::vector<std::size_t> areas; // areas[k - 1] for label k
};

inline Components label_components(const BinaryImage& img) {
    const int h = img.height(), w = img.width();
    Components out;
    out.labels.assign(static_cast<std::size_t>(h) * w, 0);
    std::deque<std::pair<int, int>> queue;
    int next = 0;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!img.at(r, c) || out.labels[static_cast<std::size_t>(r) * w + c] != 0) continue;
            ++next;
            std::size_t area = 0;
            out.labels[static_cast<std::size_t>(r) * w + c] = next;
            queue.emplace_back(r, c);
            while (!queue.empty()) {
                auto [pr, pc] = queue.front();
                queue.pop_front();
                ++area;
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int nr = pr + dr, nc = pc + dc;
                        if (!img.contains(nr, nc) || !img.at(nr, nc)) continue;
                        int& lab = out.labels[static_cast<std::size_t>(nr) * w + nc];
                        if (lab == 0) {
                            lab = next;
                            queue.emplace_back(nr, nc);
                        }
                    }
            }
            out.areas.push_back(area);
        }
    }
    return out;
}

/// Drops components smaller than area_ratio times the largest component.
inline BinaryImage remove_diacritics(const BinaryImage& img, double area_ratio = 0.08) {
    const Components comps = label_components(img);
    if (comps.areas.empty()) fail(ErrorCode::EmptyImage, "no foreground pixels");
    const double largest = static_cast<double>(*std::max_element(comps.areas.begin(), comps.areas.end()));
    BinaryImage out(img.height(), img.width());
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            const int lab = comps.labels[static_cast<std::size_t>(r) * img.width() + c];
            if (lab != 0 && static_cast<double>(comps.areas[lab - 1]) >= area_ratio * largest)
                out.set(r, c, true);
        }
    return out;
}

inline ProjectionHistogram vertical_projection(const BinaryImage& img) {
    ProjectionHistogram hist;
    hist.values.assign(static_cast<std::size_t>(img.width()), 0.0);
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            if (img.at(r, c)) hist.values[c] += 1.0;
    return hist;
}

/// Centred moving average; windows are truncated at the ends and averaged
/// over the indices they actually cover.
inline ProjectionHistogram smooth_histogram(const ProjectionHistogram& hist, int width) {
    const int n = static_cast<int>(hist.values.size());
    if (width < 1 || width % 2 == 0 || width > n)
        fail(ErrorCode::InvalidWidth, "smoothing width " + std::to_string(width) +
                                          " must be odd and in [1, " + std::to_string(n) + "]");
    const int half = width / 2;
    ProjectionHistogram out;
    out.values.resize(hist.values.size());
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half), hi = std::min(n - 1, i + half);
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) sum += hist.values[j];
        out.values[i] = sum / (hi - lo + 1);
    }
    return out;
}

/// Splits the histogram at valley columns (ink <= valley_frac * peak).
/// Runs narrower than two columns are absorbed by the closer neighbour.
inline SegmentBounds segment_characters(const ProjectionHistogram& hist, double valley_frac = 0.05) {
    const auto& v = hist.values;
    const double peak = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    if (peak <= 0.0) fail(ErrorCode::NoForeground, "histogram has no ink");
    const double cut = valley_frac * peak;

    std::vector<Interval> runs;
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < n;) {
        if (v[i] <= cut) {
            ++i;
            continue;
        }
        int j = i;
        while (j < n && v[j] > cut) ++j;
        runs.push_back({i, j});
        i = j;
    }

    constexpr int kMinWidth = 2;
    for (;;) {
        if (runs.size() < 2) break;
        auto narrow = std::find_if(runs.begin(), runs.end(), [](const Interval& iv) { return iv.width() < kMinWidth; });
        if (narrow == runs.end()) break;
        const std::size_t k = static_cast<std::size_t>(narrow - runs.begin());
        const bool has_left = k > 0, has_right = k + 1 < runs.size();
        const int left_gap = has_left ? runs[k].start - runs[k - 1].end : INT32_MAX;
        const int right_gap = has_right ? runs[k + 1].start - runs[k].end : INT32_MAX;
        if (left_gap <= right_gap) {
            runs[k - 1].end = runs[k].end;
            runs.erase(runs.begin() + static_cast<long>(k));
        } else {
            runs[k + 1].start = runs[k].start;
            runs.erase(runs.begin() + static_cast<long>(k));
        }
    }
    return {runs};
}

/// Sizes of k near-equal pieces of d; the first d mod k get one extra.
inline std::vector<int> split_sizes(int d, int k) {
    std::vector<int> sizes(static_cast<std::size_t>(k), d / k);
    for (int i = 0; i < d % k; ++i) ++sizes[i];
    return sizes;
}

inline CellGrid split_grid(const BinaryImage& img, const SegmentBounds& bounds, int frames = 3, int cells = 2) {
    if (frames < 1 || cells < 1) fail(ErrorCode::DegenerateBlock, "frames and cells must be >= 1");
    if (bounds.intervals.empty()) fail(ErrorCode::DegenerateBlock, "no intervals");
    if (img.height() < frames)
        fail(ErrorCode::DegenerateBlock, "image has fewer rows than frames");

    CellGrid grid;
    grid.frames_per_block = frames;
    grid.cells_per_frame = cells;
    const std::vector<int> band_h = split_sizes(img.height(), frames);
    for (const Interval& iv : bounds.intervals) {
        if (iv.start < 0 || iv.end > img.width() || iv.width() < cells)
            fail(ErrorCode::DegenerateBlock, "interval [" + std::to_string(iv.start) + ", " +
                                                 std::to_string(iv.end) + ") narrower than " +
                                                 std::to_string(cells) + " cells");
        Block block{iv, frames, cells, {}};
        const std::vector<int> cell_w = split_sizes(iv.width(), cells);
        int row = 0;
        for (int f = 0; f < frames; ++f) {
            int col = iv.start;
            for (int c = 0; c < cells; ++c) {
                block.grid.push_back(img.crop(row, col, band_h[f], cell_w[c]));
                col += cell_w[c];
            }
            row += band_h[f];
        }
        grid.blocks.push_back(std::move(block));
    }
    return grid;
}

/// Every intermediate of the segmentation chain, for inspection and debugging.
struct SegmentedWord {
    BinaryImage canonical;   // cropped and resized, diacritics kept
    BinaryImage stripped;    // diacritics removed
    ProjectionHistogram smoothed;
    SegmentBounds bounds;
    CellGrid grid;
};

/// Runs the full chain. The histogram is taken on the stripped image while
/// the cells are cut from the canonical one so dots still reach the features.
inline SegmentedWord segment_word(const BinaryImage& img, const ImagingConfig& cfg) {
    SegmentedWord w;
    w.canonical = preprocess(img, cfg.canvas_height, cfg.canvas_width);
    w.stripped = remove_diacritics(w.canonical, cfg.diacritic_area_ratio);
    w.smoothed = smooth_histogram(vertical_projection(w.stripped), cfg.smooth_width);
    w.bounds = segment_characters(w.smoothed, cfg.valley_frac);
    w.grid = split_grid(w.canonical, w.bounds, cfg.frames, cfg.cells);
    return w;
}

} // namespace hwr::imaging

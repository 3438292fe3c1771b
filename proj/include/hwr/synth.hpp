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

// Synthetic pseudo-word corpus with known glyph counts.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "hwr/dataset.hpp"
#include "hwr/error.hpp"
#include "hwr/image.hpp"
#include "hwr/random.hpp"
#include "hwr/text_io.hpp"

namespace hwr::synth {

/// Implicit shape on [-1,1]^2; u points right, v points down.
using GlyphShape = std::function<bool(double u, double v)>;

struct Prototype {
    std::string name;
    GlyphShape inside;
};

inline const std::vector<Prototype>& prototypes() {
    static const std::vector<Prototype> protos = {
        {"disc", [](double u, double v) { return u * u + v * v <= 0.64; }},
        {"ring", [](double u, double v) { const double r = std::hypot(u, v); return r <= 0.8 && r >= 0.45; }},
        {"square", [](double u, double v) { return std::abs(u) <= 0.65 && std::abs(v) <= 0.65; }},
        {"triangle", [](double u, double v) { return v >= -0.8 && v <= 0.7 && std::abs(u) <= 0.8 * (v + 0.8) / 1.5; }},
        {"cross", [](double u, double v) {
             return (std::abs(u) <= 0.8 && std::abs(v) <= 0.22) || (std::abs(u) <= 0.22 && std::abs(v) <= 0.8);
         }},
        {"crescent", [](double u, double v) { return std::hypot(u, v) <= 0.8 && std::hypot(u - 0.35, v) >= 0.55; }},
        {"ell", [](double u, double v) {
             return (u >= -0.6 && u <= -0.2 && std::abs(v) <= 0.8) || (u >= -0.6 && u <= 0.6 && v >= 0.4 && v <= 0.8);
         }},
        {"tee", [](double u, double v) {
             return (std::abs(u) <= 0.7 && v >= -0.8 && v <= -0.45) || (std::abs(u) <= 0.2 && std::abs(v) <= 0.8);
         }},
        {"bar", [](double u, double v) { return std::abs(u) <= 0.25 && std::abs(v) <= 0.8; }},
        {"wedge", [](double u, double v) {
             return u >= -0.7 && u <= 0.7 && std::abs(v) <= 0.15 + 0.5 * (u + 0.7) / 1.4;
         }},
    };
    return protos;
}

struct SynthOptions {
    int min_glyphs = 3;
    int max_glyphs = 6;
    int height = 56;
    int pitch = 40;        // column distance between glyph centres
    double extent = 28;    // glyph box side before scaling
    int margin = 6;
    int max_shift = 2;     // per-glyph translation, pixels
    double max_rotation = 10.0 * std::numbers::pi / 180.0;
    double min_scale = 0.9;
    double max_scale = 1.1;
    double dot_probability = 0.25;
    double dot_radius = 1.6;
    double dot_gap = 2.0; // clear rows between a dot and its glyph
};

/// Glyph prototype indices for each class; distinct per class.
inline std::vector<std::vector<int>> class_sequences(int n_classes, std::uint64_t seed, const SynthOptions& opt = {}) {
    Rng rng(derive_seed(seed, 0));
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    const std::size_t n_protos = prototypes().size();
    while (static_cast<int>(out.size()) < n_classes) {
        const int len = opt.min_glyphs + static_cast<int>(rng.index(static_cast<std::size_t>(opt.max_glyphs - opt.min_glyphs + 1)));
        std::vector<int> seq;
        for (int i = 0; i < len; ++i) seq.push_back(static_cast<int>(rng.index(n_protos)));
        if (seen.insert(seq).second) out.push_back(seq);
    }
    return out;
}

/// Renders one jittered instance of a glyph sequence.
inline BinaryImage render_word(const std::vector<int>& glyphs, Rng& rng, const SynthOptions& opt = {}) {
    const int n = static_cast<int>(glyphs.size());
    BinaryImage img(opt.height, 2 * opt.margin + n * opt.pitch);
    const double mid = (opt.height - 1) / 2.0;
    for (int g = 0; g < n; ++g) {
        const auto& shape = prototypes()[static_cast<std::size_t>(glyphs[static_cast<std::size_t>(g)])].inside;
        const auto shift = [&] { return static_cast<int>(rng.index(static_cast<std::size_t>(2 * opt.max_shift + 1))) - opt.max_shift; };
        const double cc = opt.margin + opt.pitch * (g + 0.5) - 0.5 + shift();
        const double cr = mid + shift();
        const double angle = rng.uniform(-opt.max_rotation, opt.max_rotation);
        const double half = opt.extent * rng.uniform(opt.min_scale, opt.max_scale) / 2;
        const double ca = std::cos(angle), sa = std::sin(angle);
        const int reach = static_cast<int>(std::ceil(half * std::sqrt(2.0))) + 1;
        int top = opt.height, bottom = -1;
        for (int r = static_cast<int>(cr) - reach; r <= static_cast<int>(cr) + reach; ++r)
            for (int c = static_cast<int>(cc) - reach; c <= static_cast<int>(cc) + reach; ++c) {
                if (!img.contains(r, c)) continue;
                const double x = c - cc, y = cr - r;
                const double u = (ca * x + sa * y) / half, v = -(-sa * x + ca * y) / half;
                if (std::abs(u) <= 1 && std::abs(v) <= 1 && shape(u, v)) {
                    img.set(r, c, true);
                    top = std::min(top, r);
                    bottom = std::max(bottom, r);
                }
            }
        if (bottom >= 0 && rng.uniform() < opt.dot_probability) {
            const double gap = opt.dot_gap + opt.dot_radius + 0.5;
            const double dr = rng.uniform() < 0.5 ? top - gap : bottom + gap;
            const double dc = cc + rng.uniform(-4, 4);
            for (int r = static_cast<int>(dr) - 3; r <= static_cast<int>(dr) + 3; ++r)
                for (int c = static_cast<int>(dc) - 3; c <= static_cast<int>(dc) + 3; ++c)
                    if (img.contains(r, c) && std::hypot(r - dr, c - dc) <= opt.dot_radius) img.set(r, c, true);
        }
    }
    return img;
}

/**
 * Writes `per_class` images for each of `n_classes` pseudo-words under
 * out_dir/images, plus manifest.tsv (folds a,b,c,d round-robin within each
 * class) and truth.tsv (glyph count per word). Identical arguments produce
 * byte-identical files.
 */
inline Dataset synthesize(int n_classes, int per_class, std::uint64_t seed, const std::filesystem::path& out_dir,
                          const SynthOptions& opt = {}) {
    if (n_classes < 2) fail(ErrorCode::InvalidConfig, "need at least 2 classes");
    if (per_class < 4) fail(ErrorCode::InvalidConfig, "need at least 4 samples per class");
    const auto sequences = class_sequences(n_classes, seed, opt);

    Dataset ds;
    ds.root = out_dir;
    std::string manifest, truth;
    char name[64];
    for (int k = 0; k < n_classes; ++k) {
        std::snprintf(name, sizeof name, "class%02d", k);
        const std::string label = name;
        const auto& glyphs = sequences[static_cast<std::size_t>(k)];
        for (int i = 0; i < per_class; ++i) {
            Rng rng(derive_seed(seed, 1000 + static_cast<std::uint64_t>(k) * 100000 + static_cast<std::uint64_t>(i)));
            std::snprintf(name, sizeof name, "w%02d_%04d", k, i);
            const std::string id = name;
            const std::string rel = "images/" + id + ".pgm";
            save_image(out_dir / rel, render_word(glyphs, rng, opt));
            const char fold = kFolds[i % 4];
            manifest += id + "\t" + label + "\t" + rel + "\t" + fold + "\n";
            truth += id + "\t" + std::to_string(glyphs.size()) + "\n";
            ds.samples.push_back({id, label, out_dir / rel, fold, static_cast<int>(glyphs.size())});
        }
    }
    textio::write_file(out_dir / "manifest.tsv", manifest);
    textio::write_file(out_dir / "truth.tsv", truth);
    return ds;
}

} // namespace hwr::synth

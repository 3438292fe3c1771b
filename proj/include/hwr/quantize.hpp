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

// k-means codebook over standardized cell features, and symbol assignment.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hwr/error.hpp"
#include "hwr/features.hpp"
#include "hwr/random.hpp"
#include "hwr/text_io.hpp"

namespace hwr::quantize {

using features::FeatureVector;

/// Observed symbols of one word: slices[t][f * cells + c], one slice per block.
struct SymbolSequence {
    std::vector<std::vector<int>> slices;

    std::size_t length() const { return slices.size(); }
    friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;
};

struct Codebook {
    std::vector<std::vector<double>> centroids; // K x d, standardized space
    std::vector<double> feature_mean;           // length d
    std::vector<double> feature_std;            // length d, all > 0

    int size() const { return static_cast<int>(centroids.size()); }
    int dimension() const { return static_cast<int>(feature_mean.size()); }

    std::vector<double> standardize(std::span<const double> v) const {
        if (static_cast<int>(v.size()) != dimension())
            fail(ErrorCode::DimensionMismatch, "vector of dimension " + std::to_string(v.size()) +
                                                   ", codebook expects " + std::to_string(dimension()));
        std::vector<double> z(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) z[i] = (v[i] - feature_mean[i]) / feature_std[i];
        return z;
    }

    friend bool operator==(const Codebook&, const Codebook&) = default;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

/// Index of the nearest centroid to an already standardized vector;
/// ties go to the lowest index.
inline int nearest_centroid(const std::vector<std::vector<double>>& centroids, std::span<const double> z) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < centroids.size(); ++k) {
        const double d = squared_distance(z, centroids[k]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(k);
        }
    }
    return best;
}

inline int assign_symbol(const Codebook& cb, std::span<const double> v) {
    return nearest_centroid(cb.centroids, cb.standardize(v));
}

struct KMeansOptions {
    int k = 24;
    std::uint64_t seed = 1;
    int max_iter = 100;
    double tol = 1e-6;
    bool standardize = true;
};

struct KMeansResult {
    Codebook codebook;
    std::vector<double> distortion; // after each assignment step
    int iterations = 0;
    bool converged = false;
};

inline std::size_t count_distinct(std::vector<std::vector<double>> rows) {
    std::sort(rows.begin(), rows.end());
    return static_cast<std::size_t>(std::unique(rows.begin(), rows.end()) - rows.begin());
}

/**
 * Lloyd's algorithm with k-means++ seeding.
 *
 * Features are z-scored per component first (unless disabled); components
 * with zero spread keep a unit scale. A cluster left empty after an update
 * takes the point farthest from its current centroid. Iteration stops once
 * no centroid moves by tol or more, or after max_iter updates.
 */
inline KMeansResult kmeans_fit(const std::vector<FeatureVector>& vectors, const KMeansOptions& opt) {
    if (opt.k < 1) fail(ErrorCode::TooFewVectors, "codebook size must be >= 1");
    if (vectors.empty()) fail(ErrorCode::TooFewVectors, "no vectors to cluster");
    const std::size_t d = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != d) fail(ErrorCode::DimensionMismatch, "ragged feature vectors");

    const std::size_t k = static_cast<std::size_t>(opt.k);
    const std::size_t distinct = count_distinct(vectors);
    if (distinct < k)
        fail(ErrorCode::TooFewVectors, std::to_string(distinct) + " distinct vectors for K = " + std::to_string(k));

    KMeansResult res;
    Codebook& cb = res.codebook;
    cb.feature_mean.assign(d, 0.0);
    cb.feature_std.assign(d, 1.0);
    const double n = static_cast<double>(vectors.size());
    if (opt.standardize) {
        for (const auto& v : vectors)
            for (std::size_t j = 0; j < d; ++j) cb.feature_mean[j] += v[j];
        for (auto& m : cb.feature_mean) m /= n;
        std::vector<double> var(d, 0.0);
        for (const auto& v : vectors)
            for (std::size_t j = 0; j < d; ++j) var[j] += (v[j] - cb.feature_mean[j]) * (v[j] - cb.feature_mean[j]);
        for (std::size_t j = 0; j < d; ++j) {
            const double s = std::sqrt(var[j] / n);
            cb.feature_std[j] = (s > 1e-12 && std::isfinite(s)) ? s : 1.0;
        }
    }
    std::vector<std::vector<double>> z;
    z.reserve(vectors.size());
    for (const auto& v : vectors) z.push_back(cb.standardize(v));

    // k-means++ seeding
    Rng rng(opt.seed);
    auto& cent = cb.centroids;
    cent.push_back(z[rng.index(z.size())]);
    std::vector<double> d2(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) d2[i] = squared_distance(z[i], cent[0]);
    while (cent.size() < k) {
        double total = 0;
        for (double x : d2) total += x;
        const double target = rng.uniform() * total;
        std::size_t pick = 0;
        double acc = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (d2[i] <= 0) continue;
            pick = i;
            acc += d2[i];
            if (acc > target) break;
        }
        cent.push_back(z[pick]);
        for (std::size_t i = 0; i < z.size(); ++i) d2[i] = std::min(d2[i], squared_distance(z[i], cent.back()));
    }

    std::vector<int> assign(z.size(), 0);
    auto assign_all = [&] {
        double total = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            assign[i] = nearest_centroid(cent, z[i]);
            total += squared_distance(z[i], cent[assign[i]]);
        }
        return total;
    };

    res.distortion.push_back(assign_all());
    for (int it = 0; it < opt.max_iter; ++it) {
        std::vector<std::vector<double>> sum(k, std::vector<double>(d, 0.0));
        std::vector<std::size_t> count(k, 0);
        for (std::size_t i = 0; i < z.size(); ++i) {
            ++count[assign[i]];
            for (std::size_t j = 0; j < d; ++j) sum[assign[i]][j] += z[i][j];
        }
        double shift = 0;
        std::vector<std::vector<double>> next = cent;
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) next[c][j] = sum[c][j] / static_cast<double>(count[c]);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] != 0) continue;
            std::size_t far = 0;
            double far_d = -1;
            for (std::size_t i = 0; i < z.size(); ++i) {
                const double dd = squared_distance(z[i], next[assign[i]]);
                if (dd > far_d) {
                    far_d = dd;
                    far = i;
                }
            }
            next[c] = z[far];
            --count[assign[far]];
            assign[far] = static_cast<int>(c);
            count[c] = 1;
        }
        for (std::size_t c = 0; c < k; ++c) shift = std::max(shift, std::sqrt(squared_distance(cent[c], next[c])));
        cent = std::move(next);
        res.distortion.push_back(assign_all());
        res.iterations = it + 1;
        if (shift < opt.tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

/// Element-wise symbol assignment preserving block/frame/cell order.
inline SymbolSequence quantize_word(const Codebook& cb, const features::WordFeatures& word) {
    SymbolSequence seq;
    seq.slices.reserve(word.size());
    const std::size_t width = word.empty() ? 0 : word.front().size();
    for (const auto& block : word) {
        if (block.size() != width) fail(ErrorCode::DimensionMismatch, "ragged cell array");
        std::vector<int> slice;
        slice.reserve(block.size());
        for (const auto& v : block) slice.push_back(assign_symbol(cb, v));
        seq.slices.push_back(std::move(slice));
    }
    return seq;
}

inline constexpr const char* kCodebookMagic = "DHBN-CB";
inline constexpr const char* kCodebookVersion = "v1";

inline std::string serialize_codebook(const Codebook& cb) {
    auto row = [](const char* tag, const std::vector<double>& v) {
        std::string line = tag;
        for (double x : v) line += " " + textio::format_real(x);
        return line + "\n";
    };
    std::string body = std::string(kCodebookMagic) + " " + kCodebookVersion + " " +
                       std::to_string(cb.size()) + " " + std::to_string(cb.dimension()) + "\n";
    body += row("mean", cb.feature_mean);
    body += row("std", cb.feature_std);
    for (const auto& c : cb.centroids) body += row("c", c);
    return textio::seal(body);
}

inline Codebook parse_codebook(const std::string& content, const std::string& context = "codebook") {
    const auto first = textio::split_ws(content.substr(0, content.find('\n')));
    if (first.size() < 2 || first[0] != kCodebookMagic) fail(ErrorCode::IoFailure, context + ": not a codebook file");
    if (first[1] != kCodebookVersion) fail(ErrorCode::VersionMismatch, context + ": version " + first[1]);
    const auto lines = textio::split_lines(textio::unseal(content, context));
    if (first.size() != 4) fail(ErrorCode::IoFailure, context + ": bad header");
    const long k = textio::parse_int(first[2], context), d = textio::parse_int(first[3], context);
    if (k < 1 || d < 1 || lines.size() != static_cast<std::size_t>(3 + k))
        fail(ErrorCode::IoFailure, context + ": inconsistent shape");

    auto read_row = [&](std::size_t li, const char* tag) {
        const auto tok = textio::split_ws(lines[li]);
        if (tok.size() != static_cast<std::size_t>(d + 1) || tok[0] != tag)
            fail(ErrorCode::IoFailure, context + ": bad '" + tag + "' line " + std::to_string(li + 1));
        std::vector<double> v;
        for (std::size_t i = 1; i < tok.size(); ++i) v.push_back(textio::parse_real(tok[i], context));
        return v;
    };
    Codebook cb;
    cb.feature_mean = read_row(1, "mean");
    cb.feature_std = read_row(2, "std");
    for (double s : cb.feature_std)
        if (!(s > 0)) fail(ErrorCode::IoFailure, context + ": non-positive std");
    for (long i = 0; i < k; ++i) cb.centroids.push_back(read_row(static_cast<std::size_t>(3 + i), "c"));
    return cb;
}

} // namespace hwr::quantize

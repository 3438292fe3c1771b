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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hwr/quantize.hpp"

using namespace hwr;
using namespace hwr::quantize;

namespace {

std::vector<FeatureVector> blobs(Rng& rng, const std::vector<std::vector<double>>& centers, int per, double sigma) {
    std::vector<FeatureVector> pts;
    for (int i = 0; i < per; ++i)
        for (const auto& c : centers) {
            FeatureVector p;
            for (double x : c) p.push_back(x + sigma * rng.normal());
            pts.push_back(p);
        }
    return pts;
}

std::vector<double> to_feature_space(const Codebook& cb, int k) {
    std::vector<double> v(cb.centroids[k]);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] * cb.feature_std[j] + cb.feature_mean[j];
    return v;
}

// Exhaustive nearest-centroid scan, written without the library helpers.
int brute_nearest(const Codebook& cb, const FeatureVector& v) {
    int best = -1;
    double best_d = 0;
    for (int k = 0; k < cb.size(); ++k) {
        double d = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double z = (v[j] - cb.feature_mean[j]) / cb.feature_std[j];
            d += (z - cb.centroids[k][j]) * (z - cb.centroids[k][j]);
        }
        if (best < 0 || d < best_d) {
            best = k;
            best_d = d;
        }
    }
    return best;
}

Codebook manual_codebook(std::vector<std::vector<double>> centroids) {
    Codebook cb;
    const std::size_t d = centroids.front().size();
    cb.centroids = std::move(centroids);
    cb.feature_mean.assign(d, 0.0);
    cb.feature_std.assign(d, 1.0);
    return cb;
}

} // namespace

TEST(KMeans, EveryPointItsOwnCentroid) {
    Rng rng(2);
    std::vector<FeatureVector> pts;
    for (int i = 0; i < 7; ++i) pts.push_back({rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(0, 10)});
    const auto res = kmeans_fit(pts, {.k = 7, .seed = 3});
    EXPECT_NEAR(res.distortion.back(), 0.0, 1e-20);
    std::set<int> seen;
    for (const auto& p : pts) seen.insert(assign_symbol(res.codebook, p));
    EXPECT_EQ(seen.size(), 7u);
}

TEST(KMeans, SingleCentroidIsMean) {
    Rng rng(5);
    std::vector<FeatureVector> pts;
    std::vector<double> mean(4, 0.0);
    for (int i = 0; i < 50; ++i) {
        FeatureVector p{rng.uniform(), rng.uniform(-3, 1), rng.normal(), 7.0 + rng.uniform()};
        for (int j = 0; j < 4; ++j) mean[j] += p[j] / 50;
        pts.push_back(p);
    }
    for (bool standardize : {false, true}) {
        const auto res = kmeans_fit(pts, {.k = 1, .seed = 1, .standardize = standardize});
        const auto c = to_feature_space(res.codebook, 0);
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(c[j], mean[j], 1e-12);
    }
}

TEST(KMeans, RecoversTwoBlobs) {
    Rng rng(17);
    const std::vector<std::vector<double>> centers = {{0, 0, 0}, {10.0 / std::sqrt(3.0), 10.0 / std::sqrt(3.0), 10.0 / std::sqrt(3.0)}};
    const auto pts = blobs(rng, centers, 200, 0.1);
    for (bool standardize : {false, true}) {
        const auto res = kmeans_fit(pts, {.k = 2, .seed = 8, .standardize = standardize});
        for (const auto& truth : centers) {
            double best = 1e9;
            for (int k = 0; k < 2; ++k) {
                const auto c = to_feature_space(res.codebook, k);
                double d = 0;
                for (int j = 0; j < 3; ++j) d += (c[j] - truth[j]) * (c[j] - truth[j]);
                best = std::min(best, std::sqrt(d));
            }
            EXPECT_LT(best, 0.1);
        }
    }
}

TEST(KMeans, DistortionNeverIncreases) {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<FeatureVector> pts;
        const int n = 30 + static_cast<int>(rng.index(100));
        for (int i = 0; i < n; ++i) pts.push_back({rng.normal(), rng.normal() * 3, rng.uniform()});
        const int k = 2 + static_cast<int>(rng.index(10));
        const auto res = kmeans_fit(pts, {.k = k, .seed = rng.bits()});
        for (std::size_t i = 1; i < res.distortion.size(); ++i)
            EXPECT_LE(res.distortion[i], res.distortion[i - 1] * (1 + 1e-12)) << "trial " << trial << " iter " << i;
    }
}

TEST(KMeans, EmptyClusterReseeded) {
    // Many copies of two points plus a few outliers: some seedings leave
    // clusters empty after the first update.
    std::vector<FeatureVector> pts;
    for (int i = 0; i < 40; ++i) pts.push_back({0.0, 0.0});
    for (int i = 0; i < 40; ++i) pts.push_back({1.0, 0.0});
    pts.push_back({5.0, 5.0});
    pts.push_back({5.0, 6.0});
    pts.push_back({6.0, 5.0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto res = kmeans_fit(pts, {.k = 5, .seed = seed});
        EXPECT_EQ(res.codebook.size(), 5);
        EXPECT_NEAR(res.distortion.back(), 0.0, 1e-20);
    }
}

TEST(KMeans, Deterministic) {
    Rng rng(99);
    const auto pts = blobs(rng, {{0, 0}, {3, 1}, {1, 4}}, 30, 0.5);
    const auto a = kmeans_fit(pts, {.k = 6, .seed = 1234});
    const auto b = kmeans_fit(pts, {.k = 6, .seed = 1234});
    EXPECT_EQ(a.codebook, b.codebook);
    EXPECT_EQ(a.distortion, b.distortion);
}

TEST(KMeans, TooFewDistinctVectors) {
    const std::vector<FeatureVector> pts = {{1, 2}, {1, 2}, {3, 4}};
    try {
        kmeans_fit(pts, {.k = 3});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooFewVectors);
    }
}

TEST(Assign, ExactCentroid) {
    const Codebook cb = manual_codebook({{0, 0}, {1, 0}, {0, 1}, {5, 5}, {2, 2}});
    EXPECT_EQ(assign_symbol(cb, std::vector<double>{5, 5}), 3);
}

TEST(Assign, TieGoesToLowestIndex) {
    const Codebook cb = manual_codebook({{9, 9}, {-1, 0}, {7, 7}, {8, -8}, {1, 0}});
    EXPECT_EQ(assign_symbol(cb, std::vector<double>{0, 0}), 1);
}

TEST(Assign, MatchesBruteForce) {
    Rng rng(41);
    std::vector<FeatureVector> pts;
    for (int i = 0; i < 200; ++i) pts.push_back({rng.normal(), rng.uniform(0, 5), rng.normal() * 10, rng.uniform()});
    const Codebook cb = kmeans_fit(pts, {.k = 12, .seed = 2}).codebook;
    for (int i = 0; i < 500; ++i) {
        const FeatureVector v{rng.normal() * 2, rng.uniform(-1, 6), rng.normal() * 12, rng.uniform()};
        EXPECT_EQ(assign_symbol(cb, v), brute_nearest(cb, v));
    }
}

TEST(Assign, DimensionMismatch) {
    const Codebook cb = manual_codebook({{0, 0}});
    try {
        assign_symbol(cb, std::vector<double>{1, 2, 3});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(QuantizeWord, AllCellsAtCentroidZero) {
    const Codebook cb = manual_codebook({{0, 0}, {4, 4}});
    const features::WordFeatures word = {std::vector<FeatureVector>(6, FeatureVector{0, 0})};
    EXPECT_EQ(quantize_word(cb, word).slices, (std::vector<std::vector<int>>{{0, 0, 0, 0, 0, 0}}));
}

TEST(QuantizeWord, LengthAndCentroidFixedPoint) {
    Rng rng(7);
    std::vector<FeatureVector> pts;
    for (int i = 0; i < 100; ++i) pts.push_back({rng.normal(), rng.normal()});
    const Codebook cb = kmeans_fit(pts, {.k = 6, .seed = 1}).codebook;
    features::WordFeatures word;
    for (int t = 0; t < 5; ++t) {
        std::vector<FeatureVector> cells;
        for (int k = 0; k < 6; ++k) cells.push_back(to_feature_space(cb, (k + t) % 6));
        word.push_back(cells);
    }
    const SymbolSequence seq = quantize_word(cb, word);
    ASSERT_EQ(seq.length(), 5u);
    for (int t = 0; t < 5; ++t)
        for (int k = 0; k < 6; ++k) EXPECT_EQ(seq.slices[t][k], (k + t) % 6);
}

TEST(CodebookFile, RoundTripIsLossless) {
    Rng rng(3);
    std::vector<FeatureVector> pts;
    for (int i = 0; i < 60; ++i) pts.push_back({rng.normal() / 3, rng.uniform() * 1e-7, 1e5 * rng.normal()});
    const Codebook cb = kmeans_fit(pts, {.k = 5, .seed = 9}).codebook;
    const std::string text = serialize_codebook(cb);
    EXPECT_EQ(text.rfind("DHBN-CB v1 5 3\n", 0), 0u);
    EXPECT_EQ(parse_codebook(text), cb);
}

TEST(CodebookFile, RejectsCorruption) {
    const Codebook cb = manual_codebook({{0.5, 1.5}, {2, 3}});
    const std::string text = serialize_codebook(cb);
    auto code = [](const std::string& s) {
        try {
            parse_codebook(s);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidConfig;
    };
    EXPECT_EQ(code(text.substr(0, text.size() / 2)), ErrorCode::ChecksumMismatch);
    std::string v2 = text;
    v2.replace(v2.find("v1"), 2, "v2");
    EXPECT_EQ(code(v2), ErrorCode::VersionMismatch);
    std::string flipped = text;
    flipped[flipped.find("0.5")] = '1';
    EXPECT_EQ(code(flipped), ErrorCode::ChecksumMismatch);
}

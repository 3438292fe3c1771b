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

// Image-to-lexicon training and evaluation.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hwr/config.hpp"
#include "hwr/dataset.hpp"
#include "hwr/dhbn.hpp"
#include "hwr/features.hpp"
#include "hwr/imaging.hpp"
#include "hwr/quantize.hpp"

namespace hwr {

struct TrainedModel {
    PipelineConfig config;
    quantize::Codebook codebook;
    dhbn::Lexicon lexicon;
    std::vector<std::vector<double>> em_history; // per lexicon entry, initial loglik first
};

inline features::WordFeatures word_features(const BinaryImage& img, const PipelineConfig& cfg) {
    return features::extract_features(imaging::segment_word(img, cfg.imaging).grid, cfg.zernike_order);
}

/// Features for the listed samples; other slots stay empty.
inline std::vector<features::WordFeatures> dataset_features(const Dataset& ds, const std::vector<std::size_t>& indices,
                                                            const PipelineConfig& cfg) {
    std::vector<features::WordFeatures> out(ds.samples.size());
    for (std::size_t i : indices) {
        try {
            out[i] = word_features(load_image(ds.samples[i].image), cfg);
        } catch (const Error& e) {
            throw Error(e.code(), ds.samples[i].word_id + ": " + e.what());
        }
    }
    return out;
}

inline quantize::SymbolSequence encode(const TrainedModel& model, const BinaryImage& img) {
    return quantize::quantize_word(model.codebook, word_features(img, model.config));
}

inline std::vector<dhbn::Ranked> recognize(const TrainedModel& model, const BinaryImage& img) {
    return dhbn::classify(model.lexicon, encode(model, img));
}

/**
 * Fits the codebook on every training cell, then one model per class on that
 * class's quantized words. Classes follow the dataset's label order.
 */
inline TrainedModel train_from_features(const Dataset& ds, const std::vector<features::WordFeatures>& feats,
                                        const std::vector<std::size_t>& train, const PipelineConfig& cfg) {
    const auto labels = ds.labels();
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i : train) by_class[ds.samples[i].label].push_back(i);
    for (const auto& label : labels)
        if (by_class[label].empty()) fail(ErrorCode::ClassTooSmall, "class '" + label + "' has no training samples");

    std::vector<features::FeatureVector> cells;
    for (std::size_t i : train)
        for (const auto& block : feats[i]) cells.insert(cells.end(), block.begin(), block.end());

    TrainedModel model;
    model.config = cfg;
    quantize::KMeansOptions km;
    km.k = cfg.codebook_size;
    km.seed = derive_seed(cfg.seed, 1);
    km.max_iter = cfg.kmeans_max_iter;
    km.tol = cfg.kmeans_tol;
    km.standardize = cfg.standardize;
    try {
        model.codebook = quantize::kmeans_fit(cells, km).codebook;
    } catch (const Error& e) {
        throw Error(e.code(), "codebook over " + std::to_string(cells.size()) + " training cells: " + e.what());
    }

    dhbn::EmOptions em;
    em.max_iter = cfg.em_max_iter;
    em.tol = cfg.em_tol;
    em.pseudocount = cfg.em_pseudocount;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        std::vector<quantize::SymbolSequence> seqs;
        for (std::size_t i : by_class[labels[k]]) seqs.push_back(quantize::quantize_word(model.codebook, feats[i]));
        const auto init = dhbn::init_model(model_shape(cfg), derive_seed(cfg.seed, 100 + k));
        auto res = dhbn::em_train(init, seqs, em);
        std::vector<double> history{res.initial_loglik};
        history.insert(history.end(), res.history.begin(), res.history.end());
        model.em_history.push_back(std::move(history));
        model.lexicon.add(labels[k], std::move(res.model));
    }
    return model;
}

inline TrainedModel train_lexicon(const Dataset& ds, const std::string& folds, const PipelineConfig& cfg) {
    const auto train = ds.select(normalize_folds(folds));
    return train_from_features(ds, dataset_features(ds, train, cfg), train, cfg);
}

struct Decision {
    std::string word_id;
    std::string truth;
    std::string predicted;
    double top_loglik = 0;
    double margin = 0; // top-1 minus top-2 log-likelihood
    bool known = true; // truth label is in the lexicon
    bool correct = false;
};

struct PrPoint {
    double threshold;
    double precision;
    double recall;
};

struct EvalReport {
    std::vector<std::string> labels;          // lexicon order
    std::vector<std::vector<long>> confusion; // [truth][predicted], lexicon labels only
    std::vector<double> per_class_rate;
    double rate = 0;
    std::size_t total = 0;
    std::size_t correct = 0;
    std::size_t out_of_lexicon = 0;
    std::vector<PrPoint> curve;
    std::vector<Decision> decisions;
};

/**
 * Acceptance-threshold curve over the top-1 margin, `points` thresholds
 * from the largest finite margin down to the smallest. A sample is accepted
 * when margin >= threshold. Precision is interpolated (best precision at
 * this or any lower threshold) so it never rises as the threshold drops;
 * with nothing accepted it is 1. Recall counts against samples whose label
 * the lexicon knows.
 */
inline std::vector<PrPoint> precision_recall(const std::vector<Decision>& decisions, int points = 50) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::size_t capable = 0;
    for (const auto& d : decisions) {
        capable += d.known;
        if (std::isfinite(d.margin)) {
            lo = std::min(lo, d.margin);
            hi = std::max(hi, d.margin);
        }
    }
    if (lo > hi) lo = hi = 0;
    std::vector<PrPoint> curve;
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? lo : hi - (hi - lo) * i / (points - 1);
        std::size_t accepted = 0, good = 0;
        for (const auto& d : decisions)
            if (d.margin >= t) {
                ++accepted;
                good += d.correct;
            }
        curve.push_back({t, accepted ? static_cast<double>(good) / static_cast<double>(accepted) : 1.0,
                         capable ? static_cast<double>(good) / static_cast<double>(capable) : 0.0});
    }
    for (int i = points - 2; i >= 0; --i) curve[i].precision = std::max(curve[i].precision, curve[i + 1].precision);
    return curve;
}

inline Decision decide(const TrainedModel& model, const WordSample& s, const features::WordFeatures& feats) {
    const auto ranked = dhbn::classify(model.lexicon, quantize::quantize_word(model.codebook, feats));
    Decision d;
    d.word_id = s.word_id;
    d.truth = s.label;
    d.predicted = ranked[0].label;
    d.top_loglik = ranked[0].loglik;
    if (ranked[0].loglik == dhbn::kNegInf)
        d.margin = dhbn::kNegInf;
    else
        d.margin = ranked.size() > 1 ? ranked[0].loglik - ranked[1].loglik : std::numeric_limits<double>::infinity();
    d.known = std::any_of(model.lexicon.entries().begin(), model.lexicon.entries().end(),
                          [&](const dhbn::LexiconEntry& e) { return e.label == s.label; });
    d.correct = d.predicted == d.truth;
    return d;
}

inline EvalReport evaluate_features(const TrainedModel& model, const Dataset& ds,
                                    const std::vector<features::WordFeatures>& feats,
                                    const std::vector<std::size_t>& indices) {
    if (indices.empty()) fail(ErrorCode::EmptyEvalSet, "no samples in the evaluation folds");
    EvalReport rep;
    std::map<std::string, std::size_t> index;
    for (const auto& e : model.lexicon.entries()) {
        index[e.label] = rep.labels.size();
        rep.labels.push_back(e.label);
    }
    const std::size_t n = rep.labels.size();
    rep.confusion.assign(n, std::vector<long>(n, 0));
    for (std::size_t i : indices) {
        Decision d = decide(model, ds.samples[i], feats[i]);
        ++rep.total;
        rep.correct += d.correct;
        if (d.known)
            ++rep.confusion[index.at(d.truth)][index.at(d.predicted)];
        else
            ++rep.out_of_lexicon;
        rep.decisions.push_back(std::move(d));
    }
    rep.rate = static_cast<double>(rep.correct) / static_cast<double>(rep.total);
    for (std::size_t k = 0; k < n; ++k) {
        long row = 0;
        for (long v : rep.confusion[k]) row += v;
        rep.per_class_rate.push_back(row ? static_cast<double>(rep.confusion[k][k]) / static_cast<double>(row) : 0.0);
    }
    rep.curve = precision_recall(rep.decisions);
    return rep;
}

inline EvalReport evaluate(const TrainedModel& model, const Dataset& ds, const std::string& folds) {
    const auto idx = ds.select(normalize_folds(folds));
    return evaluate_features(model, ds, dataset_features(ds, idx, model.config), idx);
}

struct FoldRun {
    std::string train;
    char test = 'a';
    double rate = 0; // percent
};

struct CrossValidation {
    std::vector<FoldRun> folds;
    double mean = 0; // percent
};

/// Train on three folds, test on the fourth, for each fold in turn.
inline std::vector<FoldRun> fold_scheme() { return {{"bcd", 'a'}, {"acd", 'b'}, {"abd", 'c'}, {"abc", 'd'}}; }

inline CrossValidation summarize_folds(std::vector<FoldRun> runs) {
    CrossValidation cv;
    double sum = 0;
    for (const auto& r : runs) sum += r.rate;
    cv.mean = runs.empty() ? 0.0 : sum / static_cast<double>(runs.size());
    cv.folds = std::move(runs);
    return cv;
}

inline CrossValidation cross_validate(const Dataset& ds, const PipelineConfig& cfg) {
    for (char f : kFolds)
        if (ds.select(std::string(1, f)).empty()) fail(ErrorCode::EmptyEvalSet, std::string("fold ") + f + " is empty");
    std::vector<std::size_t> all(ds.samples.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto feats = dataset_features(ds, all, cfg);
    auto runs = fold_scheme();
    for (auto& run : runs) {
        const auto model = train_from_features(ds, feats, ds.select(run.train), cfg);
        run.rate = 100.0 * evaluate_features(model, ds, feats, ds.select(std::string(1, run.test))).rate;
    }
    return summarize_folds(std::move(runs));
}

inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

enum class SweepAxis { Cells, States, Codebook, SmoothWidth };

inline std::string to_string(SweepAxis a) {
    switch (a) {
    case SweepAxis::Cells: return "cells";
    case SweepAxis::States: return "states";
    case SweepAxis::Codebook: return "codebook";
    case SweepAxis::SmoothWidth: return "smooth_width";
    }
    return "?";
}

inline SweepAxis parse_sweep_axis(const std::string& s) {
    for (auto a : {SweepAxis::Cells, SweepAxis::States, SweepAxis::Codebook, SweepAxis::SmoothWidth})
        if (s == to_string(a)) return a;
    fail(ErrorCode::InvalidSweepValue, "unknown sweep axis '" + s + "'");
}

inline std::vector<int> default_sweep_values(SweepAxis a) {
    switch (a) {
    case SweepAxis::Cells: return {2, 3, 4, 5, 6, 7, 8};
    case SweepAxis::States: return {9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25};
    case SweepAxis::Codebook: return {6, 18, 24, 36, 48, 58, 68, 100};
    case SweepAxis::SmoothWidth: return {3, 5, 7, 9, 11, 13, 15, 21};
    }
    return {};
}

/// Rejects values outside an axis's range. Codebook sizes must come from the
/// default set unless `any_codebook` is set.
inline void check_sweep_values(SweepAxis a, const std::vector<int>& values, bool any_codebook = false) {
    if (values.empty()) fail(ErrorCode::InvalidSweepValue, "no values for axis " + to_string(a));
    const auto defaults = default_sweep_values(a);
    for (int v : values) {
        bool ok = true;
        std::string allowed;
        switch (a) {
        case SweepAxis::Cells: ok = v >= 2 && v <= 8, allowed = "2..8"; break;
        case SweepAxis::States: ok = v >= 9 && v <= 25, allowed = "9..25"; break;
        case SweepAxis::Codebook:
            ok = any_codebook ? v >= 1 : std::find(defaults.begin(), defaults.end(), v) != defaults.end();
            allowed = any_codebook ? ">= 1" : "one of 6,18,24,36,48,58,68,100";
            break;
        case SweepAxis::SmoothWidth: ok = v >= 1, allowed = ">= 1"; break;
        }
        if (!ok) fail(ErrorCode::InvalidSweepValue, to_string(a) + " = " + std::to_string(v) + " (allowed: " + allowed + ")");
    }
}

inline void apply_sweep_value(PipelineConfig& cfg, SweepAxis a, int v) {
    switch (a) {
    case SweepAxis::Cells: cfg.imaging.cells = v; break;
    case SweepAxis::States: cfg.states = v; break;
    case SweepAxis::Codebook: cfg.codebook_size = v; break;
    case SweepAxis::SmoothWidth: cfg.imaging.smooth_width = v; break;
    }
}

struct SweepRow {
    int value;
    double rate; // fraction
};

struct SweepResult {
    SweepAxis axis = SweepAxis::Cells;
    std::vector<SweepRow> rows;
    std::size_t best = 0; // first row with the highest rate
};

/// Trains on `train_folds` and scores `eval_folds` once per value, every
/// other setting held at `cfg`.
inline SweepResult sweep(const Dataset& ds, const PipelineConfig& cfg, SweepAxis axis, const std::vector<int>& values,
                         const std::string& train_folds = "ab", const std::string& eval_folds = "c",
                         bool any_codebook = false) {
    check_sweep_values(axis, values, any_codebook);
    const auto train = ds.select(normalize_folds(train_folds));
    const auto test = ds.select(normalize_folds(eval_folds));
    std::vector<std::size_t> both = train;
    both.insert(both.end(), test.begin(), test.end());
    const bool imaging_axis = axis == SweepAxis::Cells || axis == SweepAxis::SmoothWidth;

    SweepResult res;
    res.axis = axis;
    std::vector<features::WordFeatures> shared;
    if (!imaging_axis) shared = dataset_features(ds, both, cfg);
    for (int v : values) {
        PipelineConfig c = cfg;
        apply_sweep_value(c, axis, v);
        const auto feats = imaging_axis ? dataset_features(ds, both, c) : shared;
        const auto model = train_from_features(ds, feats, train, c);
        res.rows.push_back({v, evaluate_features(model, ds, feats, test).rate});
        if (res.rows.back().rate > res.rows[res.best].rate) res.best = res.rows.size() - 1;
    }
    return res;
}

struct WidthScore {
    int width;
    double exact_fraction; // samples whose segment count equals the glyph count
    std::size_t counted;
};

struct WidthSelection {
    std::vector<WidthScore> scores;
    int best_width = 0;
};

/// Fraction of the listed samples with a known glyph count that segment into
/// exactly that many blocks.
inline WidthScore segmentation_accuracy(const Dataset& ds, const std::vector<std::size_t>& indices,
                                        const PipelineConfig& cfg) {
    WidthScore s{cfg.imaging.smooth_width, 0.0, 0};
    std::size_t exact = 0;
    for (std::size_t i : indices) {
        const auto& sample = ds.samples[i];
        if (!sample.glyph_count) continue;
        ++s.counted;
        const auto seg = imaging::segment_word(load_image(sample.image), cfg.imaging);
        exact += static_cast<int>(seg.bounds.intervals.size()) == *sample.glyph_count;
    }
    s.exact_fraction = s.counted ? static_cast<double>(exact) / static_cast<double>(s.counted) : 0.0;
    return s;
}

/// Picks the smoothing width with the best exact-count fraction on the
/// validation folds; ties go to the narrower width.
inline WidthSelection select_smooth_width(const Dataset& ds, const PipelineConfig& cfg, const std::vector<int>& widths,
                                          const std::string& folds = "c") {
    const auto idx = ds.select(normalize_folds(folds));
    WidthSelection sel;
    for (int w : widths) {
        if (w < 1) fail(ErrorCode::InvalidSweepValue, "smooth_width = " + std::to_string(w));
        PipelineConfig c = cfg;
        c.imaging.smooth_width = w;
        sel.scores.push_back(segmentation_accuracy(ds, idx, c));
    }
    if (sel.scores.empty()) fail(ErrorCode::InvalidSweepValue, "no smoothing widths");
    const WidthScore* best = &sel.scores.front();
    for (const auto& s : sel.scores)
        if (s.exact_fraction > best->exact_fraction || (s.exact_fraction == best->exact_fraction && s.width < best->width))
            best = &s;
    sel.best_width = best->width;
    return sel;
}

} // namespace hwr

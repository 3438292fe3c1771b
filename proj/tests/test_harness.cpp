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

#include <filesystem>
#include <functional>
#include <set>

#include "hwr/hwr.hpp"
#include "oracles.hpp"

using namespace hwr;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn, std::string* message = nullptr) {
    try {
        fn();
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.code();
    }
    ADD_FAILURE() << "expected an hwr::Error";
    return ErrorCode::IoFailure;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::path(testing::TempDir()) / ("hwr_harness_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

// One 5-class corpus shared by the pipeline tests.
class Corpus : public testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = new fs::path(scratch("corpus"));
        ds_ = new Dataset(synth::synthesize(5, 40, 1, *dir_));
        model_ = new TrainedModel(train_lexicon(*ds_, "ab", PipelineConfig{}));
    }
    static void TearDownTestSuite() {
        fs::remove_all(*dir_);
        delete model_;
        delete ds_;
        delete dir_;
    }
    static fs::path* dir_;
    static Dataset* ds_;
    static TrainedModel* model_;
};

fs::path* Corpus::dir_ = nullptr;
Dataset* Corpus::ds_ = nullptr;
TrainedModel* Corpus::model_ = nullptr;

} // namespace

TEST(Config, Defaults) {
    const PipelineConfig c;
    EXPECT_EQ(c.imaging.frames, 3);
    EXPECT_EQ(c.imaging.cells, 2);
    EXPECT_EQ(c.imaging.smooth_width, 5);
    EXPECT_EQ(c.codebook_size, 24);
    EXPECT_EQ(c.states, 13);
    EXPECT_EQ(c.zernike_order, 8);
    EXPECT_EQ(c.topology, dhbn::Topology::LeftRight);
}

TEST(Config, ParsesKeysCommentsAndBlanks) {
    const auto c = parse_config("# a comment\n\nsmooth.width = 7\ngrid.cells=4\n  model.topology = ergodic  \n"
                                "features.standardize = off\nsegment.valley_frac = 0.1\nseed = 99\n");
    EXPECT_EQ(c.imaging.smooth_width, 7);
    EXPECT_EQ(c.imaging.cells, 4);
    EXPECT_EQ(c.topology, dhbn::Topology::Ergodic);
    EXPECT_FALSE(c.standardize);
    EXPECT_EQ(c.imaging.valley_frac, 0.1);
    EXPECT_EQ(c.seed, 99u);
}

TEST(Config, FormatRoundTrips) {
    PipelineConfig c;
    c.imaging.diacritic_area_ratio = 0.123456789012345;
    c.em_tol = 3e-9;
    c.substates = 7;
    c.seed = 18446744073709551615ULL;
    EXPECT_EQ(parse_config(format_config(c)), c);
    EXPECT_EQ(config_key_names().size(), 19u);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    std::string msg;
    EXPECT_EQ(code_of([] { parse_config("smooth.widht = 5\n"); }, &msg), ErrorCode::InvalidConfig);
    EXPECT_NE(msg.find("smooth.widht"), std::string::npos);
    EXPECT_EQ(code_of([] { parse_config("smooth.width = five\n"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { parse_config("smooth.width = 0\n"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { parse_config("grid.frames\n"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { parse_config("model.topology = circular\n"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { parse_config("features.standardize = maybe\n"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { parse_config("seed = -1\n"); }), ErrorCode::InvalidConfig);
}

TEST(Ingest, TwoLineManifest) {
    const auto dir = scratch("ingest_ok");
    save_image(dir / "img" / "x.pgm", BinaryImage(4, 5, true));
    save_image(dir / "img" / "y.pgm", BinaryImage(3, 3, true));
    textio::write_file(dir / "m.tsv", "w1\tfoo\timg/x.pgm\ta\nw2\tbar\timg/y.pgm\td\n");
    const Dataset ds = ingest(dir, dir / "m.tsv");
    ASSERT_EQ(ds.samples.size(), 2u);
    EXPECT_EQ(ds.samples[1].word_id, "w2");
    EXPECT_EQ(ds.samples[1].label, "bar");
    EXPECT_EQ(ds.samples[1].fold, 'd');
    EXPECT_EQ(ds.samples[1].image, dir / "img" / "y.pgm");
    EXPECT_FALSE(ds.samples[0].glyph_count.has_value());
    EXPECT_EQ(ds.labels(), (std::vector<std::string>{"foo", "bar"}));
    fs::remove_all(dir);
}

TEST(Ingest, Errors) {
    const auto dir = scratch("ingest_bad");
    save_image(dir / "x.pgm", BinaryImage(4, 5, true));
    textio::write_file(dir / "notimg.pgm", "P7\n");
    auto run = [&](const std::string& manifest) {
        textio::write_file(dir / "m.tsv", manifest);
        return [&] { ingest(dir, dir / "m.tsv"); };
    };
    std::string msg;
    EXPECT_EQ(code_of(run("w1\tfoo\tx.pgm\ta\nw1\tbar\tx.pgm\tb\n"), &msg), ErrorCode::MalformedManifest);
    EXPECT_NE(msg.find("w1"), std::string::npos);
    EXPECT_EQ(code_of(run("w1\tfoo\tnope.pgm\ta\n"), &msg), ErrorCode::MissingImage);
    EXPECT_NE(msg.find("nope.pgm"), std::string::npos);
    EXPECT_EQ(code_of(run("w1\tfoo\tx.pgm\te\n")), ErrorCode::MalformedManifest);
    EXPECT_EQ(code_of(run("w1\tfoo\tx.pgm\n")), ErrorCode::MalformedManifest);
    EXPECT_EQ(code_of(run("w1 foo x.pgm a\n")), ErrorCode::MalformedManifest);
    EXPECT_EQ(code_of(run("w1\tfoo\tnotimg.pgm\ta\n")), ErrorCode::UnsupportedFormat);
    EXPECT_EQ(code_of([&] { ingest(dir, dir / "absent.tsv"); }), ErrorCode::MalformedManifest);
    fs::remove_all(dir);
}

TEST(Ingest, ReadsGeneratedCorpusWithTruth) {
    const auto dir = scratch("ingest_synth");
    const Dataset made = synth::synthesize(2, 4, 5, dir);
    const Dataset read = ingest(dir, dir / "manifest.tsv");
    ASSERT_EQ(read.samples.size(), made.samples.size());
    for (std::size_t i = 0; i < made.samples.size(); ++i) {
        EXPECT_EQ(read.samples[i].word_id, made.samples[i].word_id);
        EXPECT_EQ(read.samples[i].fold, made.samples[i].fold);
        EXPECT_EQ(read.samples[i].glyph_count, made.samples[i].glyph_count);
    }
    fs::remove_all(dir);
}

TEST(Folds, Normalize) {
    EXPECT_EQ(normalize_folds("ba"), "ab");
    EXPECT_EQ(code_of([] { normalize_folds("ae"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { normalize_folds("aa"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { normalize_folds(""); }), ErrorCode::InvalidConfig);
}

TEST(Synth, CountsAndFolds) {
    const auto dir = scratch("synth_counts");
    const Dataset ds = synth::synthesize(5, 40, 3, dir);
    EXPECT_EQ(ds.samples.size(), 200u);
    for (char f : kFolds) EXPECT_EQ(ds.select(std::string(1, f)).size(), 50u);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir / "images")) files += e.path().extension() == ".pgm";
    EXPECT_EQ(files, 200u);
    for (const auto& s : ds.samples) {
        ASSERT_TRUE(s.glyph_count.has_value());
        EXPECT_GE(*s.glyph_count, 3);
        EXPECT_LE(*s.glyph_count, 6);
    }
    fs::remove_all(dir);
}

TEST(Synth, SameSeedIsByteIdentical) {
    const auto a = scratch("synth_a"), b = scratch("synth_b"), c = scratch("synth_c");
    synth::synthesize(3, 8, 11, a);
    synth::synthesize(3, 8, 11, b);
    synth::synthesize(3, 8, 12, c);
    bool any_diff = false;
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (!e.is_regular_file()) continue;
        const auto rel = fs::relative(e.path(), a);
        EXPECT_EQ(textio::read_file(e.path()), textio::read_file(b / rel)) << rel;
        any_diff |= !fs::exists(c / rel) || textio::read_file(e.path()) != textio::read_file(c / rel);
    }
    EXPECT_TRUE(any_diff);
    for (const auto& d : {a, b, c}) fs::remove_all(d);
}

TEST(Synth, ClassesAreDistinct) {
    const auto seqs = synth::class_sequences(40, 9);
    EXPECT_EQ(std::set<std::vector<int>>(seqs.begin(), seqs.end()).size(), 40u);
}

TEST(Synth, Preconditions) {
    EXPECT_EQ(code_of([] { synth::synthesize(1, 8, 1, scratch("synth_pre")); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { synth::synthesize(3, 3, 1, scratch("synth_pre")); }), ErrorCode::InvalidConfig);
    fs::remove_all(scratch("synth_pre"));
}

TEST_F(Corpus, GeneratedWordsSegmentIntoTheirGlyphCount) {
    std::vector<std::size_t> all(ds_->samples.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto score = segmentation_accuracy(*ds_, all, PipelineConfig{});
    EXPECT_EQ(score.counted, 200u);
    EXPECT_GE(score.exact_fraction, 0.9);
}

TEST_F(Corpus, WidthSelectionPrefersNarrowOnTies) {
    const auto sel = select_smooth_width(*ds_, PipelineConfig{}, {9, 3, 5});
    ASSERT_EQ(sel.scores.size(), 3u);
    double best = 0;
    for (const auto& s : sel.scores) best = std::max(best, s.exact_fraction);
    int want = 1000;
    for (const auto& s : sel.scores)
        if (s.exact_fraction == best) want = std::min(want, s.width);
    EXPECT_EQ(sel.best_width, want);
    EXPECT_EQ(code_of([&] { select_smooth_width(*ds_, PipelineConfig{}, {0}); }), ErrorCode::InvalidSweepValue);
}

TEST_F(Corpus, TrainingProducesOneModelPerClass) {
    EXPECT_EQ(model_->lexicon.size(), 5u);
    EXPECT_EQ(model_->codebook.size(), 24);
    ASSERT_EQ(model_->em_history.size(), 5u);
    for (const auto& h : model_->em_history)
        for (std::size_t i = 1; i < h.size(); ++i) EXPECT_GE(h[i], h[i - 1] - 1e-9);
    for (const auto& e : model_->lexicon.entries()) EXPECT_TRUE(dhbn::is_stochastic(e.model));
}

TEST_F(Corpus, RetrainingIsBitIdentical) {
    const TrainedModel again = train_lexicon(*ds_, "ba", PipelineConfig{});
    const auto a = scratch("retrain_a"), b = scratch("retrain_b");
    save_model(a, *model_);
    save_model(b, again);
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (e.is_regular_file()) {
            EXPECT_EQ(textio::read_file(e.path()), textio::read_file(b / fs::relative(e.path(), a)));
        }
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_F(Corpus, OversizedCodebookReportsContext) {
    PipelineConfig cfg;
    cfg.codebook_size = 100000;
    std::string msg;
    EXPECT_EQ(code_of([&] { train_lexicon(*ds_, "a", cfg); }, &msg), ErrorCode::TooFewVectors);
    EXPECT_NE(msg.find("training cells"), std::string::npos);
}

TEST_F(Corpus, ClassWithoutTrainingSamples) {
    Dataset partial = *ds_;
    for (auto& s : partial.samples)
        if (s.label == "class03" && s.fold == 'a') s.fold = 'c';
    EXPECT_EQ(code_of([&] { train_lexicon(partial, "a", PipelineConfig{}); }), ErrorCode::ClassTooSmall);
}

TEST_F(Corpus, TrainingFoldsAreRecognized) {
    const auto rep = evaluate(*model_, *ds_, "ab");
    EXPECT_EQ(rep.rate, 1.0);
}

TEST_F(Corpus, TestFoldAccuracy) {
    const auto rep = evaluate(*model_, *ds_, "d");
    EXPECT_GE(rep.rate, 0.95);
}

TEST_F(Corpus, ReportAccounting) {
    const auto rep = evaluate(*model_, *ds_, "cd");
    EXPECT_EQ(rep.total, 100u);
    EXPECT_EQ(rep.out_of_lexicon, 0u);
    long trace = 0, sum = 0;
    for (std::size_t k = 0; k < rep.labels.size(); ++k) {
        long row = 0;
        for (long v : rep.confusion[k]) row += v;
        EXPECT_EQ(row, 20) << rep.labels[k];
        trace += rep.confusion[k][k];
        sum += row;
    }
    EXPECT_DOUBLE_EQ(rep.rate, static_cast<double>(trace) / static_cast<double>(sum));
    EXPECT_EQ(rep.decisions.size(), 100u);
}

TEST_F(Corpus, PrecisionRecallCurveIsMonotone) {
    const auto rep = evaluate(*model_, *ds_, "cd");
    ASSERT_GE(rep.curve.size(), 50u);
    for (std::size_t i = 1; i < rep.curve.size(); ++i) {
        EXPECT_LE(rep.curve[i].threshold, rep.curve[i - 1].threshold);
        EXPECT_LE(rep.curve[i].precision, rep.curve[i - 1].precision);
        EXPECT_GE(rep.curve[i].recall, rep.curve[i - 1].recall);
    }
    for (const auto& p : rep.curve) {
        EXPECT_GE(p.precision, 0.0);
        EXPECT_LE(p.precision, 1.0);
        EXPECT_GE(p.recall, 0.0);
        EXPECT_LE(p.recall, 1.0);
    }
    // lowest threshold accepts everything: recall is the plain accuracy
    EXPECT_DOUBLE_EQ(rep.curve.back().recall, rep.rate);
}

TEST_F(Corpus, ReportsAreByteIdenticalAcrossRuns) {
    const auto a = evaluate(*model_, *ds_, "d"), b = evaluate(train_lexicon(*ds_, "ab", PipelineConfig{}), *ds_, "d");
    EXPECT_EQ(report::summary_csv(a), report::summary_csv(b));
    EXPECT_EQ(report::confusion_csv(a), report::confusion_csv(b));
    EXPECT_EQ(report::curve_csv(a), report::curve_csv(b));
    EXPECT_EQ(report::decisions_csv(a), report::decisions_csv(b));
}

TEST_F(Corpus, EmptyEvaluationSet) {
    Dataset only_a = *ds_;
    for (auto& s : only_a.samples) s.fold = 'a';
    EXPECT_EQ(code_of([&] { evaluate(*model_, only_a, "d"); }), ErrorCode::EmptyEvalSet);
}

TEST_F(Corpus, PersistenceRoundTrip) {
    const auto dir = scratch("persist");
    save_model(dir, *model_);
    const TrainedModel loaded = load_model(dir);
    EXPECT_EQ(loaded.config, model_->config);
    EXPECT_EQ(loaded.codebook, model_->codebook);
    ASSERT_EQ(loaded.lexicon.size(), model_->lexicon.size());
    for (std::size_t i = 0; i < loaded.lexicon.size(); ++i) {
        EXPECT_EQ(loaded.lexicon.entries()[i].label, model_->lexicon.entries()[i].label);
        EXPECT_EQ(loaded.lexicon.entries()[i].model, model_->lexicon.entries()[i].model);
    }
    Rng rng(4);
    const auto& gen = model_->lexicon.entries()[0].model;
    for (int i = 0; i < 100; ++i) {
        const auto seq = oracle::random_sequence(rng, gen, 1 + rng.index(8));
        const auto a = dhbn::classify(model_->lexicon, seq), b = dhbn::classify(loaded.lexicon, seq);
        for (std::size_t k = 0; k < a.size(); ++k) {
            EXPECT_EQ(a[k].label, b[k].label);
            EXPECT_EQ(a[k].loglik, b[k].loglik);
        }
    }
    for (std::size_t i = 0; i < 20; ++i) {
        const auto img = load_image(ds_->samples[i * 10].image);
        EXPECT_EQ(recognize(loaded, img)[0].label, recognize(*model_, img)[0].label);
    }
    fs::remove_all(dir);
}

TEST_F(Corpus, PersistenceRejectsDamage) {
    const auto dir = scratch("persist_bad");
    auto fresh = [&] {
        fs::remove_all(dir);
        save_model(dir, *model_);
    };
    auto load = [&] { load_model(dir); };
    for (const std::string file : {"config.txt", "codebook.txt", "lexicon.tsv", "models/0002.txt"}) {
        fresh();
        const std::string text = textio::read_file(dir / file);
        textio::write_file(dir / file, text.substr(0, text.size() * 2 / 3));
        EXPECT_EQ(code_of(load), ErrorCode::ChecksumMismatch) << file;

        fresh();
        std::string bumped = text;
        bumped.replace(bumped.find(" v1"), 3, " v2");
        textio::write_file(dir / file, bumped);
        EXPECT_EQ(code_of(load), ErrorCode::VersionMismatch) << file;

        fresh();
        fs::remove(dir / file);
        EXPECT_EQ(code_of(load), ErrorCode::IoFailure) << file;
    }
    fs::remove_all(dir);
}

TEST(CrossValidation, InjectedFoldMean) {
    auto runs = fold_scheme();
    const double rates[] = {80.9, 81.23, 80.46, 82.0};
    for (int i = 0; i < 4; ++i) runs[i].rate = rates[i];
    const auto cv = summarize_folds(runs);
    EXPECT_EQ(format_fixed(cv.mean, 4), "81.1475");
    EXPECT_NE(report::crossval_csv(cv).find("mean,,81.1475\n"), std::string::npos);
}

TEST(CrossValidation, FoldSchemeIsLeaveOneFoldOut) {
    const auto runs = fold_scheme();
    ASSERT_EQ(runs.size(), 4u);
    const std::pair<std::string, char> want[] = {{"bcd", 'a'}, {"acd", 'b'}, {"abd", 'c'}, {"abc", 'd'}};
    std::string tests;
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(runs[i].train, want[i].first);
        EXPECT_EQ(runs[i].test, want[i].second);
        EXPECT_EQ(runs[i].train.find(runs[i].test), std::string::npos);
        tests += runs[i].test;
    }
    EXPECT_EQ(tests, "abcd");
}

TEST_F(Corpus, CrossValidationIsDeterministic) {
    PipelineConfig cfg;
    cfg.em_max_iter = 20;
    const auto a = cross_validate(*ds_, cfg), b = cross_validate(*ds_, cfg);
    ASSERT_EQ(a.folds.size(), 4u);
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(a.folds[i].rate, b.folds[i].rate);
        EXPECT_GE(a.folds[i].rate, 0.0);
        EXPECT_LE(a.folds[i].rate, 100.0);
    }
    EXPECT_EQ(report::crossval_csv(a), report::crossval_csv(b));
}

TEST(Sweep, DefaultAxes) {
    EXPECT_EQ(default_sweep_values(SweepAxis::Cells), (std::vector<int>{2, 3, 4, 5, 6, 7, 8}));
    const auto states = default_sweep_values(SweepAxis::States);
    EXPECT_EQ(states.size(), 17u);
    EXPECT_EQ(states.front(), 9);
    EXPECT_EQ(states.back(), 25);
    EXPECT_EQ(default_sweep_values(SweepAxis::Codebook), (std::vector<int>{6, 18, 24, 36, 48, 58, 68, 100}));
    EXPECT_EQ(default_sweep_values(SweepAxis::SmoothWidth), (std::vector<int>{3, 5, 7, 9, 11, 13, 15, 21}));
    for (auto a : {SweepAxis::Cells, SweepAxis::States, SweepAxis::Codebook, SweepAxis::SmoothWidth})
        EXPECT_EQ(parse_sweep_axis(to_string(a)), a);
}

TEST(Sweep, ValueBounds) {
    EXPECT_EQ(code_of([] { check_sweep_values(SweepAxis::Cells, {1}); }), ErrorCode::InvalidSweepValue);
    EXPECT_EQ(code_of([] { check_sweep_values(SweepAxis::Cells, {9}); }), ErrorCode::InvalidSweepValue);
    EXPECT_EQ(code_of([] { check_sweep_values(SweepAxis::States, {8}); }), ErrorCode::InvalidSweepValue);
    EXPECT_EQ(code_of([] { check_sweep_values(SweepAxis::States, {26}); }), ErrorCode::InvalidSweepValue);
    EXPECT_EQ(code_of([] { check_sweep_values(SweepAxis::Codebook, {38}); }), ErrorCode::InvalidSweepValue);
    EXPECT_EQ(code_of([] { check_sweep_values(SweepAxis::Codebook, {}); }), ErrorCode::InvalidSweepValue);
    EXPECT_EQ(code_of([] { parse_sweep_axis("frames"); }), ErrorCode::InvalidSweepValue);
    check_sweep_values(SweepAxis::Codebook, {38}, true);
    check_sweep_values(SweepAxis::States, {9, 25});
}

TEST_F(Corpus, SweepArgmax) {
    PipelineConfig cfg;
    cfg.em_max_iter = 20;
    const auto res = sweep(*ds_, cfg, SweepAxis::Codebook, {6, 24});
    ASSERT_EQ(res.rows.size(), 2u);
    for (const auto& r : res.rows) EXPECT_GE(res.rows[res.best].rate, r.rate);
    for (std::size_t i = 0; i < res.best; ++i) EXPECT_LT(res.rows[i].rate, res.rows[res.best].rate);
    EXPECT_EQ(report::sweep_csv(res).rfind("value,recognition_rate\n6,", 0), 0u);

    const auto cells = sweep(*ds_, cfg, SweepAxis::Cells, {2, 3});
    ASSERT_EQ(cells.rows.size(), 2u);
    EXPECT_EQ(cells.rows[1].value, 3);
}

TEST(PrecisionRecall, HandBuiltDecisions) {
    std::vector<Decision> ds;
    auto add = [&](double margin, bool correct, bool known = true) {
        Decision d;
        d.margin = margin;
        d.correct = correct;
        d.known = known;
        ds.push_back(d);
    };
    add(4.0, true);
    add(3.0, false);
    add(2.0, true);
    add(1.0, true);
    add(0.0, false, false);
    const auto curve = precision_recall(ds, 5);
    ASSERT_EQ(curve.size(), 5u);
    // thresholds 4, 3, 2, 1, 0
    EXPECT_EQ(curve[0].threshold, 4.0);
    EXPECT_EQ(curve[4].threshold, 0.0);
    EXPECT_DOUBLE_EQ(curve[0].recall, 0.25);
    EXPECT_DOUBLE_EQ(curve[3].recall, 0.75);
    EXPECT_DOUBLE_EQ(curve[4].recall, 0.75);
    EXPECT_DOUBLE_EQ(curve[0].precision, 1.0);
    // raw precision at threshold 3 is 1/2, lifted to the 3/4 reached at threshold 1
    EXPECT_DOUBLE_EQ(curve[1].precision, 0.75);
    EXPECT_DOUBLE_EQ(curve[3].precision, 0.75);
    EXPECT_DOUBLE_EQ(curve[4].precision, 0.6);
}

TEST(PrecisionRecall, InfiniteMargins) {
    std::vector<Decision> ds(3);
    ds[0].margin = std::numeric_limits<double>::infinity();
    ds[0].correct = true;
    ds[1].margin = dhbn::kNegInf;
    ds[2].margin = 1.5;
    ds[2].correct = true;
    const auto curve = precision_recall(ds);
    ASSERT_EQ(curve.size(), 50u);
    for (const auto& p : curve) {
        EXPECT_EQ(p.threshold, 1.5);
        EXPECT_DOUBLE_EQ(p.recall, 2.0 / 3.0);
        EXPECT_DOUBLE_EQ(p.precision, 1.0);
    }
}

TEST(Report, CsvQuoting) {
    EXPECT_EQ(report::csv_field("plain"), "plain");
    EXPECT_EQ(report::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(report::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Report, FeatureDump) {
    features::WordFeatures word = {{{1, 2}, {3, 4}, {5, 6}, {7, 8}}};
    EXPECT_EQ(report::features_csv_header(2), "word_id,block,frame,cell,v0,v1\n");
    EXPECT_EQ(report::features_csv("w", word, 2), "w,0,0,0,1,2\nw,0,0,1,3,4\nw,0,1,0,5,6\nw,0,1,1,7,8\n");
}

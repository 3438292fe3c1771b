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

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hwr/hwr.hpp"

namespace fs = std::filesystem;
using namespace hwr;

namespace {

struct Globals {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
};

PipelineConfig load_pipeline_config(const Globals& g) {
    PipelineConfig cfg = g.config.empty() ? PipelineConfig{} : load_config(g.config);
    if (g.seed) cfg.seed = *g.seed;
    return cfg;
}

fs::path need_out(const Globals& g, const char* what) {
    if (g.out.empty()) throw CLI::ValidationError("--out", std::string("required by ") + what);
    return g.out;
}

Dataset load_dataset(const std::string& data, const std::string& manifest) {
    return ingest(data, manifest.empty() ? fs::path(data) / "manifest.tsv" : fs::path(manifest));
}

void print_eval(const EvalReport& rep) {
    std::printf("samples %zu  correct %zu  recognition rate %s%%\n", rep.total, rep.correct,
                format_fixed(100.0 * rep.rate, 4).c_str());
    for (std::size_t k = 0; k < rep.labels.size(); ++k)
        std::printf("  %-16s %s%%\n", rep.labels[k].c_str(), format_fixed(100.0 * rep.per_class_rate[k], 2).c_str());
}

/// Canonical word image with segment boundary columns drawn in gray.
void write_segment_debug(const fs::path& path, const imaging::SegmentedWord& w) {
    const auto& img = w.canonical;
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(img.height()) * static_cast<std::size_t>(img.width()));
    std::vector<bool> boundary(static_cast<std::size_t>(img.width()), false);
    for (const auto& iv : w.bounds.intervals) {
        boundary[static_cast<std::size_t>(iv.start)] = true;
        boundary[static_cast<std::size_t>(iv.end - 1)] = true;
    }
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            gray[static_cast<std::size_t>(r * img.width() + c)] =
                img.at(r, c) ? 0 : (boundary[static_cast<std::size_t>(c)] ? 128 : 255);
    write_pgm(path, img.height(), img.width(), gray);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Offline handwritten word recognition with dynamic hierarchical Bayesian networks"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "pipeline config file (key = value lines)")->check(CLI::ExistingFile);
    app.add_option("--seed", g.seed, "seed overriding the config");
    app.add_option("--out", g.out, "output directory");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic word corpus");
    int classes = 5, per_class = 40;
    synth_cmd->add_option("--classes", classes, "number of word classes")->capture_default_str();
    synth_cmd->add_option("--per-class", per_class, "samples per class")->capture_default_str();

    // train
    auto* train_cmd = app.add_subcommand("train", "train a lexicon and codebook; writes the model to --out");
    std::string data, manifest, folds = "ab";
    train_cmd->add_option("--data", data, "dataset root")->required();
    train_cmd->add_option("--manifest", manifest, "manifest (default <data>/manifest.tsv)");
    train_cmd->add_option("--folds", folds, "training folds")->capture_default_str();

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "score a trained model; CSV reports go to --out");
    std::string model_dir, eval_folds = "d";
    eval_cmd->add_option("--model", model_dir, "trained model directory")->required()->check(CLI::ExistingDirectory);
    eval_cmd->add_option("--data", data, "dataset root")->required();
    eval_cmd->add_option("--manifest", manifest, "manifest (default <data>/manifest.tsv)");
    eval_cmd->add_option("--folds", eval_folds, "evaluation folds")->capture_default_str();

    // crossval
    auto* cv_cmd = app.add_subcommand("crossval", "four-fold cross-validation");
    cv_cmd->add_option("--data", data, "dataset root")->required();
    cv_cmd->add_option("--manifest", manifest, "manifest (default <data>/manifest.tsv)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "recognition rate across one hyper-parameter");
    std::string axis_name;
    std::vector<int> values;
    std::string sweep_train = "ab", sweep_eval = "c";
    bool any_codebook = false;
    sweep_cmd->add_option("--data", data, "dataset root")->required();
    sweep_cmd->add_option("--manifest", manifest, "manifest (default <data>/manifest.tsv)");
    sweep_cmd->add_option("--axis", axis_name, "cells | states | codebook | smooth_width")->required();
    sweep_cmd->add_option("--values", values, "values to try (default: the axis' standard set)")->delimiter(',');
    sweep_cmd->add_option("--train", sweep_train, "training folds")->capture_default_str();
    sweep_cmd->add_option("--eval", sweep_eval, "validation folds")->capture_default_str();
    sweep_cmd->add_flag("--any-codebook", any_codebook, "allow codebook sizes outside the standard set");

    // widths
    auto* widths_cmd =
        app.add_subcommand("widths", "pick the smoothing width whose segment counts best match the ground truth");
    std::string width_folds = "c";
    widths_cmd->add_option("--data", data, "dataset root (needs truth.tsv)")->required();
    widths_cmd->add_option("--manifest", manifest, "manifest (default <data>/manifest.tsv)");
    widths_cmd->add_option("--values", values, "candidate widths")->delimiter(',');
    widths_cmd->add_option("--folds", width_folds, "validation folds")->capture_default_str();

    // recognize
    auto* rec_cmd = app.add_subcommand("recognize", "rank lexicon labels for one word image");
    std::string image;
    rec_cmd->add_option("image", image, "PBM/PGM word image")->required();
    rec_cmd->add_option("--model", model_dir, "trained model directory")->required()->check(CLI::ExistingDirectory);

    // segment
    auto* seg_cmd = app.add_subcommand("segment", "print character block bounds for one word image");
    std::string debug_pgm, features_out;
    seg_cmd->add_option("image", image, "PBM/PGM word image")->required();
    seg_cmd->add_option("--debug", debug_pgm, "write the canonical image with boundary columns marked");
    seg_cmd->add_option("--features", features_out, "write per-cell feature vectors as CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth_cmd) {
            const PipelineConfig cfg = load_pipeline_config(g);
            const Dataset ds = synth::synthesize(classes, per_class, cfg.seed, need_out(g, "synth"));
            std::printf("wrote %zu images in %d classes to %s\n", ds.samples.size(), classes, g.out.c_str());
        } else if (*train_cmd) {
            const PipelineConfig cfg = load_pipeline_config(g);
            const fs::path out = need_out(g, "train");
            const Dataset ds = load_dataset(data, manifest);
            const TrainedModel model = train_lexicon(ds, folds, cfg);
            save_model(out, model);
            std::printf("trained %zu word models on folds %s (codebook %d x %d); saved to %s\n", model.lexicon.size(),
                        normalize_folds(folds).c_str(), model.codebook.size(), model.codebook.dimension(),
                        out.string().c_str());
            for (std::size_t k = 0; k < model.lexicon.size(); ++k) {
                const auto& h = model.em_history[k];
                std::printf("  %-16s EM %zu iterations, loglik %.4f -> %.4f\n",
                            model.lexicon.entries()[k].label.c_str(), h.size() - 1, h.front(), h.back());
            }
        } else if (*eval_cmd) {
            const TrainedModel model = load_model(model_dir);
            if (!g.config.empty()) std::fprintf(stderr, "note: --config ignored; the model carries its own\n");
            const EvalReport rep = evaluate(model, load_dataset(data, manifest), eval_folds);
            print_eval(rep);
            if (!g.out.empty()) report::write_eval(g.out, rep);
        } else if (*cv_cmd) {
            const CrossValidation cv = cross_validate(load_dataset(data, manifest), load_pipeline_config(g));
            const std::string csv = report::crossval_csv(cv);
            std::fputs(csv.c_str(), stdout);
            if (!g.out.empty()) textio::write_file(fs::path(g.out) / "crossval.csv", csv);
        } else if (*sweep_cmd) {
            const SweepAxis axis = parse_sweep_axis(axis_name);
            if (values.empty()) values = default_sweep_values(axis);
            const SweepResult res = sweep(load_dataset(data, manifest), load_pipeline_config(g), axis, values,
                                          sweep_train, sweep_eval, any_codebook);
            const std::string csv = report::sweep_csv(res);
            std::fputs(csv.c_str(), stdout);
            std::printf("best %s = %d (rate %s)\n", to_string(axis).c_str(), res.rows[res.best].value,
                        format_fixed(res.rows[res.best].rate, 4).c_str());
            if (!g.out.empty()) textio::write_file(fs::path(g.out) / ("sweep_" + to_string(axis) + ".csv"), csv);
        } else if (*widths_cmd) {
            if (values.empty()) values = default_sweep_values(SweepAxis::SmoothWidth);
            const WidthSelection sel =
                select_smooth_width(load_dataset(data, manifest), load_pipeline_config(g), values, width_folds);
            const std::string csv = report::widths_csv(sel);
            std::fputs(csv.c_str(), stdout);
            std::printf("selected smooth.width = %d\n", sel.best_width);
            if (!g.out.empty()) textio::write_file(fs::path(g.out) / "widths.csv", csv);
        } else if (*rec_cmd) {
            const TrainedModel model = load_model(model_dir);
            for (const auto& r : recognize(model, load_image(image)))
                std::printf("%s\t%s\n", r.label.c_str(), textio::format_real(r.loglik).c_str());
        } else if (*seg_cmd) {
            const PipelineConfig cfg = load_pipeline_config(g);
            const auto w = imaging::segment_word(load_image(image), cfg.imaging);
            std::printf("%zu blocks\n", w.bounds.intervals.size());
            for (const auto& iv : w.bounds.intervals) std::printf("%d\t%d\n", iv.start, iv.end);
            if (!debug_pgm.empty()) write_segment_debug(debug_pgm, w);
            if (!features_out.empty()) {
                const auto feats = features::extract_features(w.grid, cfg.zernike_order);
                textio::write_file(features_out,
                                   report::features_csv_header(features::feature_dimension(cfg.zernike_order)) +
                                       report::features_csv(fs::path(image).stem().string(), feats, cfg.imaging.cells));
            }
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

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

// CSV renderings of evaluation results. Reals use 17 significant digits
// except recognition rates in percent, which use 4 decimals.

#pragma once

#include <filesystem>
#include <string>

#include "hwr/features.hpp"
#include "hwr/pipeline.hpp"
#include "hwr/text_io.hpp"

namespace hwr::report {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// label,samples,correct,rate with a final `overall` row.
inline std::string summary_csv(const EvalReport& rep) {
    std::string out = "label,samples,correct,rate\n";
    for (std::size_t k = 0; k < rep.labels.size(); ++k) {
        long row = 0;
        for (long v : rep.confusion[k]) row += v;
        out += csv_field(rep.labels[k]) + "," + std::to_string(row) + "," + std::to_string(rep.confusion[k][k]) + "," +
               textio::format_real(rep.per_class_rate[k]) + "\n";
    }
    out += "overall," + std::to_string(rep.total) + "," + std::to_string(rep.correct) + "," +
           textio::format_real(rep.rate) + "\n";
    return out;
}

/// Rows are true labels, columns predicted labels.
inline std::string confusion_csv(const EvalReport& rep) {
    std::string out = "truth";
    for (const auto& l : rep.labels) out += "," + csv_field(l);
    out += "\n";
    for (std::size_t k = 0; k < rep.labels.size(); ++k) {
        out += csv_field(rep.labels[k]);
        for (long v : rep.confusion[k]) out += "," + std::to_string(v);
        out += "\n";
    }
    return out;
}

inline std::string curve_csv(const EvalReport& rep) {
    std::string out = "threshold,precision,recall\n";
    for (const auto& p : rep.curve)
        out += textio::format_real(p.threshold) + "," + textio::format_real(p.precision) + "," +
               textio::format_real(p.recall) + "\n";
    return out;
}

inline std::string decisions_csv(const EvalReport& rep) {
    std::string out = "word_id,truth,predicted,top_loglik,margin,correct\n";
    for (const auto& d : rep.decisions)
        out += csv_field(d.word_id) + "," + csv_field(d.truth) + "," + csv_field(d.predicted) + "," +
               textio::format_real(d.top_loglik) + "," + textio::format_real(d.margin) + "," + (d.correct ? "1" : "0") +
               "\n";
    return out;
}

/// summary.csv, confusion.csv, pr_curve.csv and decisions.csv under dir.
inline void write_eval(const std::filesystem::path& dir, const EvalReport& rep) {
    textio::write_file(dir / "summary.csv", summary_csv(rep));
    textio::write_file(dir / "confusion.csv", confusion_csv(rep));
    textio::write_file(dir / "pr_curve.csv", curve_csv(rep));
    textio::write_file(dir / "decisions.csv", decisions_csv(rep));
}

inline std::string crossval_csv(const CrossValidation& cv) {
    std::string out = "test_fold,train_folds,recognition_rate\n";
    for (const auto& f : cv.folds) out += std::string(1, f.test) + "," + f.train + "," + format_fixed(f.rate, 4) + "\n";
    return out + "mean,," + format_fixed(cv.mean, 4) + "\n";
}

inline std::string sweep_csv(const SweepResult& s) {
    std::string out = "value,recognition_rate\n";
    for (const auto& r : s.rows) out += std::to_string(r.value) + "," + textio::format_real(r.rate) + "\n";
    return out;
}

inline std::string widths_csv(const WidthSelection& sel) {
    std::string out = "width,exact_fraction,samples\n";
    for (const auto& s : sel.scores)
        out += std::to_string(s.width) + "," + textio::format_real(s.exact_fraction) + "," + std::to_string(s.counted) + "\n";
    return out;
}

/// One row per cell: word_id,block,frame,cell,v0..v{d-1}.
inline std::string features_csv(const std::string& word_id, const features::WordFeatures& word, int cells_per_frame) {
    std::string out;
    for (std::size_t b = 0; b < word.size(); ++b)
        for (std::size_t i = 0; i < word[b].size(); ++i) {
            out += csv_field(word_id) + "," + std::to_string(b) + "," + std::to_string(i / cells_per_frame) + "," +
                   std::to_string(i % cells_per_frame);
            for (double v : word[b][i]) out += "," + textio::format_real(v);
            out += "\n";
        }
    return out;
}

inline std::string features_csv_header(int dimension) {
    std::string out = "word_id,block,frame,cell";
    for (int j = 0; j < dimension; ++j) out += ",v" + std::to_string(j);
    return out + "\n";
}

} // namespace hwr::report

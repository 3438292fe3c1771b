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

// Pipeline configuration and its `key = value` file format.

#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hwr/dhbn.hpp"
#include "hwr/error.hpp"
#include "hwr/imaging.hpp"
#include "hwr/text_io.hpp"

namespace hwr {

struct PipelineConfig {
    imaging::ImagingConfig imaging;
    int zernike_order = 8;
    bool standardize = true;
    int codebook_size = 24;
    int kmeans_max_iter = 100;
    double kmeans_tol = 1e-6;
    int states = 13;
    int substates = 4;
    dhbn::Topology topology = dhbn::Topology::LeftRight;
    int em_max_iter = 100;
    double em_tol = 1e-6;
    double em_pseudocount = 1e-3;
    std::uint64_t seed = 1;

    friend bool operator==(const PipelineConfig& a, const PipelineConfig& b) {
        return a.imaging.smooth_width == b.imaging.smooth_width && a.imaging.valley_frac == b.imaging.valley_frac &&
               a.imaging.diacritic_area_ratio == b.imaging.diacritic_area_ratio &&
               a.imaging.canvas_height == b.imaging.canvas_height && a.imaging.canvas_width == b.imaging.canvas_width &&
               a.imaging.frames == b.imaging.frames && a.imaging.cells == b.imaging.cells &&
               a.zernike_order == b.zernike_order && a.standardize == b.standardize &&
               a.codebook_size == b.codebook_size && a.kmeans_max_iter == b.kmeans_max_iter &&
               a.kmeans_tol == b.kmeans_tol && a.states == b.states && a.substates == b.substates &&
               a.topology == b.topology && a.em_max_iter == b.em_max_iter && a.em_tol == b.em_tol &&
               a.em_pseudocount == b.em_pseudocount && a.seed == b.seed;
    }
};

namespace detail {

struct ConfigKey {
    const char* name;
    std::function<void(PipelineConfig&, const std::string&)> set;
    std::function<std::string(const PipelineConfig&)> get;
};

inline long config_int(const std::string& key, const std::string& v, long lo, long hi) {
    char* end = nullptr;
    errno = 0;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno == ERANGE || x < lo || x > hi)
        fail(ErrorCode::InvalidConfig, key + ": expected an integer in [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "], got '" + v + "'");
    return x;
}

inline double config_real(const std::string& key, const std::string& v, double lo, double hi) {
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno == ERANGE || !(x >= lo && x <= hi))
        fail(ErrorCode::InvalidConfig, key + ": expected a number in [" + textio::format_real(lo) + ", " +
                                           textio::format_real(hi) + "], got '" + v + "'");
    return x;
}

inline bool config_switch(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    fail(ErrorCode::InvalidConfig, key + ": expected on/off, got '" + v + "'");
}

#define HWR_INT_KEY(NAME, FIELD, LO, HI)                                                                  \
    ConfigKey {                                                                                          \
        NAME, [](PipelineConfig& c, const std::string& v) { c.FIELD = static_cast<int>(config_int(NAME, v, LO, HI)); }, \
            [](const PipelineConfig& c) { return std::to_string(c.FIELD); }                               \
    }
#define HWR_REAL_KEY(NAME, FIELD, LO, HI)                                                        \
    ConfigKey {                                                                                 \
        NAME, [](PipelineConfig& c, const std::string& v) { c.FIELD = config_real(NAME, v, LO, HI); }, \
            [](const PipelineConfig& c) { return textio::format_real(c.FIELD); }                 \
    }

inline const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = {
        HWR_INT_KEY("smooth.width", imaging.smooth_width, 1, 1000),
        HWR_REAL_KEY("segment.valley_frac", imaging.valley_frac, 0.0, 1.0),
        HWR_REAL_KEY("diacritic.area_ratio", imaging.diacritic_area_ratio, 0.0, 1.0),
        HWR_INT_KEY("canvas.height", imaging.canvas_height, 1, 10000),
        HWR_INT_KEY("canvas.width", imaging.canvas_width, 1, 10000),
        HWR_INT_KEY("grid.frames", imaging.frames, 1, 100),
        HWR_INT_KEY("grid.cells", imaging.cells, 1, 100),
        HWR_INT_KEY("features.zernike_order", zernike_order, 0, 40),
        {"features.standardize",
         [](PipelineConfig& c, const std::string& v) { c.standardize = config_switch("features.standardize", v); },
         [](const PipelineConfig& c) { return std::string(c.standardize ? "on" : "off"); }},
        HWR_INT_KEY("codebook.size", codebook_size, 1, 100000),
        HWR_INT_KEY("kmeans.max_iter", kmeans_max_iter, 1, 1000000),
        HWR_REAL_KEY("kmeans.tol", kmeans_tol, 0.0, 1e300),
        HWR_INT_KEY("model.states", states, 1, 1000),
        HWR_INT_KEY("model.substates", substates, 1, 1000),
        {"model.topology",
         [](PipelineConfig& c, const std::string& v) {
             try {
                 c.topology = dhbn::parse_topology(v);
             } catch (const Error&) {
                 fail(ErrorCode::InvalidConfig, "model.topology: expected left-right or ergodic, got '" + v + "'");
             }
         },
         [](const PipelineConfig& c) { return dhbn::to_string(c.topology); }},
        HWR_INT_KEY("em.max_iter", em_max_iter, 1, 1000000),
        HWR_REAL_KEY("em.tol", em_tol, 0.0, 1e300),
        HWR_REAL_KEY("em.pseudocount", em_pseudocount, 0.0, 1e300),
        {"seed",
         [](PipelineConfig& c, const std::string& v) {
             char* end = nullptr;
             errno = 0;
             const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
             if (v.empty() || v[0] == '-' || *end != '\0' || errno == ERANGE)
                 fail(ErrorCode::InvalidConfig, "seed: expected a non-negative integer, got '" + v + "'");
             c.seed = x;
         },
         [](const PipelineConfig& c) { return std::to_string(c.seed); }},
    };
    return keys;
}

#undef HWR_INT_KEY
#undef HWR_REAL_KEY

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace detail

inline std::vector<std::string> config_key_names() {
    std::vector<std::string> out;
    for (const auto& k : detail::config_keys()) out.push_back(k.name);
    return out;
}

inline void set_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& k : detail::config_keys())
        if (key == k.name) return k.set(cfg, value);
    fail(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
}

inline std::string get_config_value(const PipelineConfig& cfg, const std::string& key) {
    for (const auto& k : detail::config_keys())
        if (key == k.name) return k.get(cfg);
    fail(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
}

/// Parses `key = value` lines over the defaults. Blank lines and lines
/// starting with '#' are skipped; unknown keys are rejected.
inline PipelineConfig parse_config(const std::string& text, PipelineConfig cfg = {}) {
    int line_no = 0;
    for (const auto& raw : textio::split_lines(text)) {
        ++line_no;
        const std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": expected 'key = value'");
        set_config_value(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    return cfg;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) fail(ErrorCode::InvalidConfig, "no config file " + path.string());
    return parse_config(textio::read_file(path));
}

/// Every key, one per line, in a form parse_config reads back exactly.
inline std::string format_config(const PipelineConfig& cfg) {
    std::string out;
    for (const auto& k : detail::config_keys()) out += std::string(k.name) + " = " + k.get(cfg) + "\n";
    return out;
}

inline dhbn::ModelShape model_shape(const PipelineConfig& cfg) {
    return {cfg.states, cfg.substates, cfg.imaging.frames, cfg.imaging.cells, cfg.codebook_size, cfg.topology};
}

} // namespace hwr

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

// Dynamic hierarchical Bayesian network word model.
//
// Each time slice holds one root character state x_t. Beneath it every frame
// f has a hidden sub-state s_{t,f} drawn from frame_cpt[f][x_t], and every
// cell c of that frame emits a symbol from emit[s_{t,f}]. Only the roots are
// linked across slices. Sub-states are summed out inside the slice, which
// turns the model into an HMM over root states with a structured emission
// term, so forward, Viterbi and Baum-Welch run over roots only.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hwr/error.hpp"
#include "hwr/quantize.hpp"
#include "hwr/random.hpp"
#include "hwr/text_io.hpp"

namespace hwr::dhbn {

using quantize::SymbolSequence;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::span<double> row(int r) { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<const double> row(int r) const {
        return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

enum class Topology { LeftRight, Ergodic };

inline std::string to_string(Topology t) { return t == Topology::LeftRight ? "left-right" : "ergodic"; }

inline Topology parse_topology(const std::string& s) {
    if (s == "left-right") return Topology::LeftRight;
    if (s == "ergodic") return Topology::Ergodic;
    fail(ErrorCode::InvalidConfig, "unknown topology '" + s + "'");
}

/// Whether the topology permits a transition from root state i to j.
inline bool transition_allowed(Topology t, int n_root, int i, int j) {
    if (t == Topology::Ergodic) return true;
    return j == i || (j == i + 1 && j < n_root);
}

struct WordModel {
    int n_root = 0;    // N
    int n_sub = 0;     // S
    int n_frames = 0;  // F
    int n_cells = 0;   // C
    int n_symbols = 0; // K
    Topology topology = Topology::LeftRight;

    std::vector<double> pi;        // N
    Matrix trans;                  // N x N, a_ij = P(x_t = j | x_{t-1} = i)
    std::vector<Matrix> frame_cpt; // F matrices of N x S
    Matrix emit;                   // S x K, shared by the cells of every frame

    int slice_width() const { return n_frames * n_cells; }

    friend bool operator==(const WordModel&, const WordModel&) = default;
};

struct ModelShape {
    int n_root = 13;
    int n_sub = 4;
    int n_frames = 3;
    int n_cells = 2;
    int n_symbols = 24;
    Topology topology = Topology::LeftRight;
};

namespace detail {

inline void normalize(std::span<double> row) {
    double s = 0;
    for (double v : row) s += v;
    for (double& v : row) v /= s;
}

inline double log_sum_exp(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

inline bool row_ok(std::span<const double> row, double tol) {
    double s = 0;
    for (double v : row) {
        if (!(v >= 0.0) || !std::isfinite(v)) return false;
        s += v;
    }
    return std::abs(s - 1.0) <= tol;
}

} // namespace detail

/// True when every distribution in the model is non-negative and sums to 1.
inline bool is_stochastic(const WordModel& m, double tol = 1e-9) {
    if (!detail::row_ok(m.pi, tol)) return false;
    for (int i = 0; i < m.n_root; ++i)
        if (!detail::row_ok(m.trans.row(i), tol)) return false;
    for (const auto& cpt : m.frame_cpt)
        for (int j = 0; j < m.n_root; ++j)
            if (!detail::row_ok(cpt.row(j), tol)) return false;
    for (int s = 0; s < m.n_sub; ++s)
        if (!detail::row_ok(m.emit.row(s), tol)) return false;
    return true;
}

/// pi, frame CPTs and emissions start near-uniform with seeded jitter in
/// [0, 0.01); transitions are uniform over the successors the topology allows.
inline WordModel init_model(const ModelShape& shape, std::uint64_t seed) {
    if (shape.n_root < 1 || shape.n_sub < 1 || shape.n_frames < 1 || shape.n_cells < 1 || shape.n_symbols < 1)
        fail(ErrorCode::InvalidCounts, "all model counts must be >= 1");
    WordModel m;
    m.n_root = shape.n_root;
    m.n_sub = shape.n_sub;
    m.n_frames = shape.n_frames;
    m.n_cells = shape.n_cells;
    m.n_symbols = shape.n_symbols;
    m.topology = shape.topology;

    Rng rng(seed);
    auto jittered = [&](std::span<double> row) {
        for (double& v : row) v = 1.0 + rng.uniform(0.0, 0.01);
        detail::normalize(row);
    };

    m.pi.assign(static_cast<std::size_t>(m.n_root), 0.0);
    jittered(m.pi);
    m.trans = Matrix(m.n_root, m.n_root);
    for (int i = 0; i < m.n_root; ++i) {
        int allowed = 0;
        for (int j = 0; j < m.n_root; ++j) allowed += transition_allowed(m.topology, m.n_root, i, j);
        for (int j = 0; j < m.n_root; ++j)
            m.trans(i, j) = transition_allowed(m.topology, m.n_root, i, j) ? 1.0 / allowed : 0.0;
    }
    for (int f = 0; f < m.n_frames; ++f) {
        Matrix cpt(m.n_root, m.n_sub);
        for (int j = 0; j < m.n_root; ++j) jittered(cpt.row(j));
        m.frame_cpt.push_back(std::move(cpt));
    }
    m.emit = Matrix(m.n_sub, m.n_symbols);
    for (int s = 0; s < m.n_sub; ++s) jittered(m.emit.row(s));
    return m;
}

inline void check_slice(const WordModel& m, std::span<const int> slice) {
    if (static_cast<int>(slice.size()) != m.slice_width())
        fail(ErrorCode::DimensionMismatch, "slice has " + std::to_string(slice.size()) + " symbols, model expects " +
                                               std::to_string(m.slice_width()));
    for (int y : slice)
        if (y < 0 || y >= m.n_symbols)
            fail(ErrorCode::SymbolOutOfRange, "symbol " + std::to_string(y) + " outside [0, " +
                                                  std::to_string(m.n_symbols) + ")");
}

/// Log-domain copy of the parameters, computed once per inference call.
struct LogParams {
    std::vector<double> pi;
    Matrix trans;
    std::vector<Matrix> frame_cpt;
    Matrix emit;

    explicit LogParams(const WordModel& m) : pi(m.pi), trans(m.trans), frame_cpt(m.frame_cpt), emit(m.emit) {
        auto take_log = [](std::span<double> xs) {
            for (double& x : xs) x = std::log(x);
        };
        take_log(pi);
        for (int i = 0; i < trans.rows(); ++i) take_log(trans.row(i));
        for (auto& cpt : frame_cpt)
            for (int j = 0; j < cpt.rows(); ++j) take_log(cpt.row(j));
        for (int s = 0; s < emit.rows(); ++s) take_log(emit.row(s));
    }
};

/// Per-slice emission terms over every root state, kept factored so EM can
/// recover sub-state posteriors.
struct SliceTerms {
    Matrix cells_given_sub;  // F x S: sum_c log emit[s][y_fc]
    Matrix frame_given_root; // F x N: log sum_s cpt[f][j][s] * prod_c emit[s][y_fc]
    std::vector<double> root; // N: sum_f frame_given_root(f, j)
};

inline SliceTerms slice_terms(const WordModel& m, const LogParams& lp, std::span<const int> slice) {
    check_slice(m, slice);
    SliceTerms t{Matrix(m.n_frames, m.n_sub), Matrix(m.n_frames, m.n_root),
                 std::vector<double>(static_cast<std::size_t>(m.n_root), 0.0)};
    std::vector<double> buf(static_cast<std::size_t>(m.n_sub));
    for (int f = 0; f < m.n_frames; ++f) {
        for (int s = 0; s < m.n_sub; ++s) {
            double acc = 0;
            for (int c = 0; c < m.n_cells; ++c) acc += lp.emit(s, slice[f * m.n_cells + c]);
            t.cells_given_sub(f, s) = acc;
        }
        for (int j = 0; j < m.n_root; ++j) {
            for (int s = 0; s < m.n_sub; ++s) buf[s] = lp.frame_cpt[f](j, s) + t.cells_given_sub(f, s);
            t.frame_given_root(f, j) = detail::log_sum_exp(buf);
            t.root[j] += t.frame_given_root(f, j);
        }
    }
    return t;
}

/// log P(slice | root state): frames independent given the root, sub-states
/// summed out, cells independent given the sub-state.
inline double slice_emission_loglik(const WordModel& m, std::span<const int> slice, int root_state) {
    if (root_state < 0 || root_state >= m.n_root) fail(ErrorCode::InvalidCounts, "root state out of range");
    const LogParams lp(m);
    return slice_terms(m, lp, slice).root[static_cast<std::size_t>(root_state)];
}

inline void check_sequence(const SymbolSequence& seq) {
    if (seq.slices.empty()) fail(ErrorCode::EmptySequence, "sequence has no slices");
}

/// log alpha_t(j) for every slice, plus the emission terms used.
struct ForwardPass {
    std::vector<SliceTerms> terms;
    std::vector<std::vector<double>> log_alpha;
    double loglik = kNegInf;
};

inline ForwardPass forward_pass(const WordModel& m, const LogParams& lp, const SymbolSequence& seq) {
    check_sequence(seq);
    const std::size_t T = seq.length();
    const int N = m.n_root;
    ForwardPass fp;
    fp.terms.reserve(T);
    fp.log_alpha.assign(T, std::vector<double>(static_cast<std::size_t>(N)));
    std::vector<double> buf(static_cast<std::size_t>(N));
    for (std::size_t t = 0; t < T; ++t) {
        fp.terms.push_back(slice_terms(m, lp, seq.slices[t]));
        const auto& e = fp.terms.back().root;
        for (int j = 0; j < N; ++j) {
            if (t == 0) {
                fp.log_alpha[0][j] = lp.pi[j] + e[j];
                continue;
            }
            for (int i = 0; i < N; ++i) buf[i] = fp.log_alpha[t - 1][i] + lp.trans(i, j);
            fp.log_alpha[t][j] = detail::log_sum_exp(buf) + e[j];
        }
    }
    fp.loglik = detail::log_sum_exp(fp.log_alpha.back());
    return fp;
}

/// log P(sequence | model); -inf when the model cannot produce it.
inline double forward_loglik(const WordModel& m, const SymbolSequence& seq) {
    const LogParams lp(m);
    return forward_pass(m, lp, seq).loglik;
}

struct ViterbiResult {
    std::vector<int> path;
    double log_prob = kNegInf;
};

/// Most probable root-state path; ties resolve toward the lower state index.
inline ViterbiResult viterbi_decode(const WordModel& m, const SymbolSequence& seq) {
    check_sequence(seq);
    const LogParams lp(m);
    const std::size_t T = seq.length();
    const int N = m.n_root;
    std::vector<double> delta(static_cast<std::size_t>(N)), next(static_cast<std::size_t>(N));
    std::vector<std::vector<int>> back(T, std::vector<int>(static_cast<std::size_t>(N), 0));

    for (std::size_t t = 0; t < T; ++t) {
        const auto e = slice_terms(m, lp, seq.slices[t]).root;
        for (int j = 0; j < N; ++j) {
            if (t == 0) {
                next[j] = lp.pi[j] + e[j];
                continue;
            }
            double best = kNegInf;
            int arg = 0;
            for (int i = 0; i < N; ++i) {
                const double v = delta[i] + lp.trans(i, j);
                if (v > best) {
                    best = v;
                    arg = i;
                }
            }
            back[t][j] = arg;
            next[j] = best + e[j];
        }
        std::swap(delta, next);
    }

    ViterbiResult res;
    int last = 0;
    for (int j = 0; j < N; ++j)
        if (delta[j] > res.log_prob) {
            res.log_prob = delta[j];
            last = j;
        }
    if (res.log_prob == kNegInf) fail(ErrorCode::ImpossibleSequence, "every root path has probability zero");
    res.path.assign(T, 0);
    res.path[T - 1] = last;
    for (std::size_t t = T - 1; t > 0; --t) res.path[t - 1] = back[t][res.path[t]];
    return res;
}

struct EmOptions {
    int max_iter = 100;
    double tol = 1e-4;
    double pseudocount = 1e-3;
};

struct EmResult {
    WordModel model;
    double initial_loglik = kNegInf;
    std::vector<double> history; // total loglik after each iteration
    int iterations = 0;
    bool converged = false;
};

namespace detail {

struct Accumulators {
    std::vector<double> pi;
    Matrix trans;
    std::vector<Matrix> frame_cpt;
    Matrix emit;
    double loglik = 0;

    explicit Accumulators(const WordModel& m)
        : pi(static_cast<std::size_t>(m.n_root), 0.0), trans(m.n_root, m.n_root),
          frame_cpt(static_cast<std::size_t>(m.n_frames), Matrix(m.n_root, m.n_sub)), emit(m.n_sub, m.n_symbols) {}
};

inline void accumulate(const WordModel& m, const LogParams& lp, const SymbolSequence& seq, Accumulators& acc) {
    const ForwardPass fp = forward_pass(m, lp, seq);
    acc.loglik += fp.loglik;
    if (!std::isfinite(fp.loglik)) return;

    const std::size_t T = seq.length();
    const int N = m.n_root;
    std::vector<std::vector<double>> log_beta(T, std::vector<double>(static_cast<std::size_t>(N), 0.0));
    std::vector<double> buf(static_cast<std::size_t>(N));
    for (std::size_t t = T - 1; t > 0; --t)
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) buf[j] = lp.trans(i, j) + fp.terms[t].root[j] + log_beta[t][j];
            log_beta[t - 1][i] = log_sum_exp(buf);
        }

    for (std::size_t t = 0; t < T; ++t) {
        const SliceTerms& st = fp.terms[t];
        for (int j = 0; j < N; ++j) {
            const double gamma = std::exp(fp.log_alpha[t][j] + log_beta[t][j] - fp.loglik);
            if (t == 0) acc.pi[j] += gamma;
            if (t > 0)
                for (int i = 0; i < N; ++i)
                    if (lp.trans(i, j) != kNegInf)
                        acc.trans(i, j) += std::exp(fp.log_alpha[t - 1][i] + lp.trans(i, j) + st.root[j] +
                                                    log_beta[t][j] - fp.loglik);
            if (gamma == 0.0) continue;
            for (int f = 0; f < m.n_frames; ++f)
                for (int s = 0; s < m.n_sub; ++s) {
                    const double w = gamma * std::exp(lp.frame_cpt[f](j, s) + st.cells_given_sub(f, s) -
                                                      st.frame_given_root(f, j));
                    acc.frame_cpt[f](j, s) += w;
                    for (int c = 0; c < m.n_cells; ++c) acc.emit(s, seq.slices[t][f * m.n_cells + c]) += w;
                }
        }
    }
}

inline Accumulators expectation(const WordModel& m, const std::vector<SymbolSequence>& seqs) {
    const LogParams lp(m);
    Accumulators acc(m);
    for (const auto& seq : seqs) accumulate(m, lp, seq, acc);
    return acc;
}

inline WordModel maximization(const WordModel& prev, const Accumulators& acc, double pc) {
    WordModel m = prev;
    for (int j = 0; j < m.n_root; ++j) m.pi[j] = acc.pi[j] + pc;
    normalize(m.pi);
    for (int i = 0; i < m.n_root; ++i) {
        for (int j = 0; j < m.n_root; ++j)
            m.trans(i, j) = transition_allowed(m.topology, m.n_root, i, j) ? acc.trans(i, j) + pc : 0.0;
        normalize(m.trans.row(i));
    }
    for (int f = 0; f < m.n_frames; ++f)
        for (int j = 0; j < m.n_root; ++j) {
            for (int s = 0; s < m.n_sub; ++s) m.frame_cpt[f](j, s) = acc.frame_cpt[f](j, s) + pc;
            normalize(m.frame_cpt[f].row(j));
        }
    for (int s = 0; s < m.n_sub; ++s) {
        for (int k = 0; k < m.n_symbols; ++k) m.emit(s, k) = acc.emit(s, k) + pc;
        normalize(m.emit.row(s));
    }
    return m;
}

} // namespace detail

/**
 * Baum-Welch over root states, with sub-state posteriors computed inside
 * each slice conditioned on the root. Every re-estimated distribution gets
 * an additive pseudocount before renormalizing; transitions the topology
 * forbids stay exactly zero. Stops when the relative gain in total
 * log-likelihood drops below tol, or after max_iter iterations.
 */
inline EmResult em_train(const WordModel& init, const std::vector<SymbolSequence>& sequences,
                         const EmOptions& opt = {}) {
    if (sequences.empty()) fail(ErrorCode::NoSequences, "EM needs at least one sequence");
    for (const auto& seq : sequences) {
        check_sequence(seq);
        for (const auto& slice : seq.slices) check_slice(init, slice);
    }

    EmResult res;
    res.model = init;
    detail::Accumulators acc = detail::expectation(res.model, sequences);
    res.initial_loglik = acc.loglik;
    double prev = acc.loglik;
    for (int it = 0; it < opt.max_iter; ++it) {
        res.model = detail::maximization(res.model, acc, opt.pseudocount);
        acc = detail::expectation(res.model, sequences);
        res.history.push_back(acc.loglik);
        res.iterations = it + 1;
        if (std::isfinite(prev) && acc.loglik - prev < opt.tol * std::abs(prev)) {
            res.converged = true;
            break;
        }
        prev = acc.loglik;
    }
    return res;
}

/// Draws root states and symbols from the generative model.
struct Sample {
    std::vector<int> roots;
    SymbolSequence seq;
};

inline Sample sample_sequence(const WordModel& m, std::size_t length, Rng& rng) {
    auto draw = [&rng](std::span<const double> p) {
        const double u = rng.uniform();
        double acc = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            acc += p[i];
            if (u < acc) return static_cast<int>(i);
        }
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] > 0) return static_cast<int>(i);
        return 0;
    };
    Sample out;
    for (std::size_t t = 0; t < length; ++t) {
        const int x = t == 0 ? draw(m.pi) : draw(m.trans.row(out.roots.back()));
        out.roots.push_back(x);
        std::vector<int> slice;
        for (int f = 0; f < m.n_frames; ++f) {
            const int s = draw(m.frame_cpt[f].row(x));
            for (int c = 0; c < m.n_cells; ++c) slice.push_back(draw(m.emit.row(s)));
        }
        out.seq.slices.push_back(std::move(slice));
    }
    return out;
}

struct LexiconEntry {
    std::string label;
    WordModel model;
};

class Lexicon {
public:
    void add(std::string label, WordModel model) {
        for (const auto& e : entries_)
            if (e.label == label) fail(ErrorCode::DuplicateLabel, "label '" + label + "' already in lexicon");
        entries_.push_back({std::move(label), std::move(model)});
    }

    const std::vector<LexiconEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<LexiconEntry> entries_;
};

struct Ranked {
    std::string label;
    double loglik;
};

/// Scores the sequence under every model; best first, ties in lexicon order.
inline std::vector<Ranked> classify(const Lexicon& lex, const SymbolSequence& seq) {
    if (lex.empty()) fail(ErrorCode::EmptyLexicon, "cannot classify against an empty lexicon");
    check_sequence(seq);
    std::vector<Ranked> out;
    out.reserve(lex.size());
    for (const auto& e : lex.entries()) out.push_back({e.label, forward_loglik(e.model, seq)});
    std::stable_sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) { return a.loglik > b.loglik; });
    return out;
}

inline constexpr const char* kModelMagic = "DHBN-WM";
inline constexpr const char* kModelVersion = "v1";

inline std::string serialize_model(const WordModel& m) {
    auto row = [](const std::string& tag, std::span<const double> v) {
        std::string line = tag;
        for (double x : v) line += " " + textio::format_real(x);
        return line + "\n";
    };
    std::string body = std::string(kModelMagic) + " " + kModelVersion + " " + std::to_string(m.n_root) + " " +
                       std::to_string(m.n_sub) + " " + std::to_string(m.n_frames) + " " +
                       std::to_string(m.n_cells) + " " + std::to_string(m.n_symbols) + " " +
                       to_string(m.topology) + "\n";
    body += row("pi", m.pi);
    for (int i = 0; i < m.n_root; ++i) body += row("trans", m.trans.row(i));
    for (int f = 0; f < m.n_frames; ++f)
        for (int j = 0; j < m.n_root; ++j) body += row("frame" + std::to_string(f), m.frame_cpt[f].row(j));
    for (int s = 0; s < m.n_sub; ++s) body += row("emit", m.emit.row(s));
    return textio::seal(body);
}

inline WordModel parse_model(const std::string& content, const std::string& context = "model") {
    const auto head = textio::split_ws(content.substr(0, content.find('\n')));
    if (head.size() < 2 || head[0] != kModelMagic) fail(ErrorCode::IoFailure, context + ": not a word model file");
    if (head[1] != kModelVersion) fail(ErrorCode::VersionMismatch, context + ": version " + head[1]);
    const auto lines = textio::split_lines(textio::unseal(content, context));
    if (head.size() != 8) fail(ErrorCode::IoFailure, context + ": bad header");

    ModelShape shape;
    shape.n_root = static_cast<int>(textio::parse_int(head[2], context));
    shape.n_sub = static_cast<int>(textio::parse_int(head[3], context));
    shape.n_frames = static_cast<int>(textio::parse_int(head[4], context));
    shape.n_cells = static_cast<int>(textio::parse_int(head[5], context));
    shape.n_symbols = static_cast<int>(textio::parse_int(head[6], context));
    shape.topology = parse_topology(head[7]);
    WordModel m = init_model(shape, 0);
    const std::size_t expected = 2 + static_cast<std::size_t>(m.n_root) * (1 + m.n_frames) + m.n_sub;
    if (lines.size() != expected) fail(ErrorCode::IoFailure, context + ": wrong line count");

    std::size_t li = 1;
    auto read_row = [&](const std::string& tag, std::span<double> dst) {
        const auto tok = textio::split_ws(lines[li]);
        if (tok.size() != dst.size() + 1 || tok[0] != tag)
            fail(ErrorCode::IoFailure, context + ": bad '" + tag + "' line " + std::to_string(li + 1));
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = textio::parse_real(tok[i + 1], context);
        ++li;
    };
    read_row("pi", m.pi);
    for (int i = 0; i < m.n_root; ++i) read_row("trans", m.trans.row(i));
    for (int f = 0; f < m.n_frames; ++f)
        for (int j = 0; j < m.n_root; ++j) read_row("frame" + std::to_string(f), m.frame_cpt[f].row(j));
    for (int s = 0; s < m.n_sub; ++s) read_row("emit", m.emit.row(s));
    if (!is_stochastic(m)) fail(ErrorCode::IoFailure, context + ": parameters are not stochastic");
    return m;
}

} // namespace hwr::dhbn

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spacetok/detail/parallel.hpp"
#include "spacetok/error.hpp"
#include "spacetok/textnorm.hpp"
#include "spacetok/types.hpp"
#include "spacetok/utf8.hpp"

namespace spacetok {

struct UnigramTrainConfig {
    size_t target_size = 16000;      // final vocabulary size, specials included
    size_t seed_size = 1000000;      // candidate cap before the first EM round
    size_t max_piece_length = 16;    // code points
    int em_iterations_per_round = 2; // EM steps between pruning rounds
    double shrink_factor = 0.75;     // fraction of pieces kept per pruning round
    int threads = 1;
};

namespace detail {

struct SvHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const {
        return std::hash<std::string_view>{}(s);
    }
};

using PieceIndex = std::unordered_map<std::string, int, SvHash, std::equal_to<>>;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Count floor for pieces whose expected count underflows to exactly zero
// (e.g. a space piece seeded into a corpus that never produced one); keeps
// log-probs finite without disturbing observed counts.
constexpr double kCountFloor = 1e-100;
// Score handicap, below the worst vocabulary piece, for a single unknown
// character during inference.
constexpr double kUnkScoreOffset = -10.0;

inline double logsumexp2(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

} // namespace detail

struct UnigramModel {
    // Pieces in lexicographic byte order; this is also ID order after the
    // specials and the serialization order.
    std::vector<std::pair<std::string, double>> pieces;
    SpaceMode space_mode = SpaceMode::Isolated;
    NormConfig norm;
    size_t target_size = 0;
    std::unordered_map<std::string, int> id_map;
    // Derived lookups; rebuilt, never serialized.
    detail::PieceIndex piece_index; // piece -> index into pieces
    size_t max_piece_cp = 0;
    double min_logp = 0.0;

    size_t vocab_size() const { return id_map.size(); }
    int token_id(const std::string& token) const {
        auto it = id_map.find(token);
        return it == id_map.end() ? kUnkId : it->second;
    }
    // Sorts pieces and rebuilds every derived lookup. Call after
    // constructing or mutating the piece list by hand.
    void rebuild_indexes() {
        std::sort(pieces.begin(), pieces.end());
        for (size_t i = 1; i < pieces.size(); ++i)
            if (pieces[i].first == pieces[i - 1].first)
                throw ConfigError("duplicate piece: " + pieces[i].first);
        piece_index.clear();
        piece_index.reserve(pieces.size());
        id_map.clear();
        id_map.reserve(kNumSpecials + pieces.size());
        int next = 0;
        for (const auto& s : kSpecialTokens) id_map.emplace(std::string(s), next++);
        max_piece_cp = 0;
        min_logp = 0.0;
        for (size_t i = 0; i < pieces.size(); ++i) {
            piece_index.emplace(pieces[i].first, static_cast<int>(i));
            id_map.emplace(pieces[i].first, next++);
            max_piece_cp = std::max(max_piece_cp, utf8::length(pieces[i].first));
            min_logp = std::min(min_logp, pieces[i].second);
        }
    }
};

namespace detail {

// Unique pretokens with frequencies and code point boundaries, the working
// set for seeding, EM, and pruning.
struct WordList {
    std::vector<std::string> words;
    std::vector<int64_t> freqs;
    std::vector<std::vector<uint32_t>> bounds; // byte offsets, first is 0

    size_t size() const { return words.size(); }
};

inline WordList build_word_list(const Corpus& corpus) {
    std::unordered_map<std::string, int64_t> freq;
    for (const auto& sentence : corpus.sentences)
        for (const auto& pretoken : sentence) ++freq[pretoken];
    std::vector<std::pair<std::string, int64_t>> sorted(freq.begin(), freq.end());
    std::sort(sorted.begin(), sorted.end());

    WordList wl;
    wl.words.reserve(sorted.size());
    wl.freqs.reserve(sorted.size());
    wl.bounds.reserve(sorted.size());
    for (auto& [word, count] : sorted) {
        std::vector<uint32_t> b{0};
        size_t pos = 0;
        while (pos < word.size()) {
            utf8::decode_at(word, pos);
            b.push_back(static_cast<uint32_t>(pos));
        }
        wl.words.push_back(std::move(word));
        wl.freqs.push_back(count);
        wl.bounds.push_back(std::move(b));
    }
    return wl;
}

// Whether a substring is an admissible piece for the mode: Isolated pieces
// never contain the space symbol except the space piece itself; Attached
// pieces may carry it only as their first character.
inline bool piece_admissible(std::string_view piece, SpaceMode mode,
                             std::string_view sym) {
    const size_t first = piece.find(sym);
    if (first == std::string_view::npos) return true;
    if (mode == SpaceMode::Attached)
        return first == 0 && piece.find(sym, sym.size()) == std::string_view::npos;
    return piece.size() == sym.size() && first == 0;
}

} // namespace detail

// Enumerates within-pretoken substrings up to cfg.max_piece_length code
// points, filtered by mode, and caps them at cfg.seed_size by count (ties
// kept in lexicographic order). All single characters survive the cap, and
// Isolated mode always includes the space piece. Returned sorted by count
// descending, then lexicographically.
inline std::vector<std::pair<std::string, int64_t>> seed_vocabulary(
    const Corpus& corpus, const UnigramTrainConfig& cfg, SpaceMode mode,
    const NormConfig& norm = {}) {
    if (corpus.sentences.empty()) throw ConfigError("cannot seed from an empty corpus");
    if (cfg.max_piece_length < 1)
        throw ConfigError("max_piece_length must be at least 1");
    const std::string& sym = norm.space_symbol;

    const detail::WordList wl = detail::build_word_list(corpus);
    std::unordered_map<std::string, int64_t> counts;
    for (size_t wi = 0; wi < wl.size(); ++wi) {
        const std::string& w = wl.words[wi];
        const auto& b = wl.bounds[wi];
        const size_t n = b.size() - 1;
        for (size_t i = 0; i < n; ++i) {
            const size_t max_j = std::min(n, i + cfg.max_piece_length);
            for (size_t j = i + 1; j <= max_j; ++j) {
                const std::string_view piece =
                    std::string_view(w).substr(b[i], b[j] - b[i]);
                if (!detail::piece_admissible(piece, mode, sym)) continue;
                counts[std::string(piece)] += wl.freqs[wi];
            }
        }
    }
    if (mode != SpaceMode::Attached) counts.emplace(sym, 0);

    std::vector<std::pair<std::string, int64_t>> protected_pieces, rest;
    for (auto& [piece, count] : counts) {
        if (utf8::length(piece) == 1)
            protected_pieces.emplace_back(piece, count);
        else
            rest.emplace_back(piece, count);
    }
    const auto by_count = [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    };
    std::sort(rest.begin(), rest.end(), by_count);
    const size_t cap =
        cfg.seed_size > protected_pieces.size() ? cfg.seed_size - protected_pieces.size() : 0;
    if (rest.size() > cap) rest.resize(cap);

    std::vector<std::pair<std::string, int64_t>> out = std::move(protected_pieces);
    out.insert(out.end(), rest.begin(), rest.end());
    std::sort(out.begin(), out.end(), by_count);
    return out;
}

namespace detail {

inline UnigramModel model_from_counts(
    const std::vector<std::pair<std::string, int64_t>>& seeds, SpaceMode mode,
    const NormConfig& norm, size_t target_size) {
    double total = 0.0;
    for (const auto& [piece, count] : seeds)
        total += count > 0 ? static_cast<double>(count) : kCountFloor;
    UnigramModel model;
    model.space_mode = mode;
    model.norm = norm;
    model.target_size = target_size;
    model.pieces.reserve(seeds.size());
    const double log_total = std::log(total);
    for (const auto& [piece, count] : seeds) {
        const double c = count > 0 ? static_cast<double>(count) : kCountFloor;
        model.pieces.emplace_back(piece, std::log(c) - log_total);
    }
    model.rebuild_indexes();
    return model;
}

// One word's segmentation lattice arcs against the current piece set.
struct Arc {
    uint32_t start; // code point index
    uint32_t end;
    int32_t piece;
    double logp;
};

inline void collect_arcs(const UnigramModel& model, const std::string& word,
                         const std::vector<uint32_t>& bounds, std::vector<Arc>& arcs) {
    arcs.clear();
    const size_t n = bounds.size() - 1;
    for (size_t i = 0; i < n; ++i) {
        const size_t max_j = std::min(n, i + model.max_piece_cp);
        for (size_t j = i + 1; j <= max_j; ++j) {
            const std::string_view piece =
                std::string_view(word).substr(bounds[i], bounds[j] - bounds[i]);
            auto it = model.piece_index.find(piece);
            if (it == model.piece_index.end()) continue;
            arcs.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j),
                            it->second, model.pieces[it->second].second});
        }
    }
}

// Forward-backward over one word's lattice. Adds freq-weighted expected
// counts into `expected` and returns the word log-likelihood; kNegInf when
// the word is not segmentable.
inline double word_expectations(const UnigramModel& model, const std::string& word,
                                const std::vector<uint32_t>& bounds, int64_t freq,
                                std::vector<Arc>& arcs,
                                std::unordered_map<int32_t, double>& expected) {
    collect_arcs(model, word, bounds, arcs);
    const size_t n = bounds.size() - 1;
    if (n == 0) return 0.0;
    std::vector<double> alpha(n + 1, kNegInf), beta(n + 1, kNegInf);
    alpha[0] = 0.0;
    for (const Arc& a : arcs)
        alpha[a.end] = logsumexp2(alpha[a.end], alpha[a.start] + a.logp);
    const double z = alpha[n];
    if (z == kNegInf) return kNegInf;
    beta[n] = 0.0;
    for (auto it = arcs.rbegin(); it != arcs.rend(); ++it)
        beta[it->start] = logsumexp2(beta[it->start], it->logp + beta[it->end]);
    for (const Arc& a : arcs) {
        const double post = std::exp(alpha[a.start] + a.logp + beta[a.end] - z);
        expected[a.piece] += static_cast<double>(freq) * post;
    }
    return static_cast<double>(freq) * z;
}

// One EM step over a prepared word list. Returns the corpus log-likelihood
// of the model as passed in (the E-step model); piece log-probs are updated
// in place by the M-step. Deterministic for any thread count: per-block
// partials are folded in block order.
inline double em_step_impl(UnigramModel& model, const WordList& wl, int threads) {
    if (wl.size() == 0) return 0.0;
    const size_t block = 1024;
    const size_t num_blocks = (wl.size() + block - 1) / block;
    struct Partial {
        std::vector<std::pair<int32_t, double>> counts;
        double ll = 0.0;
        int64_t bad_word = -1;
    };
    std::vector<Partial> partials(num_blocks);
    for_blocks(wl.size(), block, threads, [&](size_t b, size_t begin, size_t end) {
        std::vector<Arc> arcs;
        std::unordered_map<int32_t, double> expected;
        Partial& p = partials[b];
        for (size_t wi = begin; wi < end; ++wi) {
            const double ll = word_expectations(model, wl.words[wi], wl.bounds[wi],
                                                wl.freqs[wi], arcs, expected);
            if (ll == kNegInf) {
                if (p.bad_word < 0) p.bad_word = static_cast<int64_t>(wi);
                return;
            }
            p.ll += ll;
        }
        p.counts.assign(expected.begin(), expected.end());
        std::sort(p.counts.begin(), p.counts.end());
    });

    for (const Partial& p : partials)
        if (p.bad_word >= 0)
            throw CoverageError("pretoken '" + wl.words[p.bad_word] +
                                "' cannot be segmented with the current pieces");

    std::vector<double> expected(model.pieces.size(), 0.0);
    double ll = 0.0;
    for (const Partial& p : partials) {
        ll += p.ll;
        for (const auto& [piece, count] : p.counts) expected[piece] += count;
    }

    double total = 0.0;
    for (double& c : expected) {
        if (c == 0.0) c = kCountFloor;
        total += c;
    }
    const double log_total = std::log(total);
    for (size_t i = 0; i < model.pieces.size(); ++i)
        model.pieces[i].second = std::log(expected[i]) - log_total;
    model.min_logp = 0.0;
    for (const auto& [piece, logp] : model.pieces)
        model.min_logp = std::min(model.min_logp, logp);
    return ll;
}

// Viterbi over one word. mask: piece index excluded from the lattice, or
// -1. allow_unk adds a single-character fallback arc, below every real
// piece, wherever the single character itself is not in the vocabulary.
// Ties prefer fewer tokens, then the longer piece at the leftmost point of
// difference. Returns false when no path exists.
struct ViterbiState {
    std::vector<double> score;
    std::vector<int32_t> ntok;
    std::vector<uint32_t> step;  // code points consumed by the chosen first arc
    std::vector<int32_t> piece; // piece index, -1 for UNK
};

inline bool viterbi_word(const UnigramModel& model, const std::string& word,
                         const std::vector<uint32_t>& bounds, int32_t mask,
                         bool allow_unk, ViterbiState& st) {
    const size_t n = bounds.size() - 1;
    const double unk_score = model.min_logp + kUnkScoreOffset;
    st.score.assign(n + 1, kNegInf);
    st.ntok.assign(n + 1, 0);
    st.step.assign(n + 1, 0);
    st.piece.assign(n + 1, -1);
    st.score[n] = 0.0;
    for (size_t ii = n; ii-- > 0;) {
        const size_t i = ii;
        double best_score = kNegInf;
        int32_t best_ntok = 0;
        uint32_t best_step = 0;
        int32_t best_piece = -1;
        bool char_covered = false;
        const size_t max_j = std::min(n, i + std::max<size_t>(model.max_piece_cp, 1));
        for (size_t j = i + 1; j <= max_j; ++j) {
            const std::string_view sub =
                std::string_view(word).substr(bounds[i], bounds[j] - bounds[i]);
            auto it = model.piece_index.find(sub);
            if (it == model.piece_index.end() || it->second == mask) continue;
            if (j == i + 1) char_covered = true;
            if (st.score[j] == kNegInf) continue;
            const double cand = model.pieces[it->second].second + st.score[j];
            const int32_t cand_ntok = st.ntok[j] + 1;
            const uint32_t cand_step = static_cast<uint32_t>(j - i);
            if (cand > best_score ||
                (cand == best_score &&
                 (cand_ntok < best_ntok ||
                  (cand_ntok == best_ntok && cand_step > best_step)))) {
                best_score = cand;
                best_ntok = cand_ntok;
                best_step = cand_step;
                best_piece = it->second;
            }
        }
        if (allow_unk && !char_covered && st.score[i + 1] != kNegInf) {
            const double cand = unk_score + st.score[i + 1];
            const int32_t cand_ntok = st.ntok[i + 1] + 1;
            if (cand > best_score || (cand == best_score && cand_ntok < best_ntok)) {
                best_score = cand;
                best_ntok = cand_ntok;
                best_step = 1;
                best_piece = -1;
            }
        }
        if (best_score == kNegInf) continue;
        st.score[i] = best_score;
        st.ntok[i] = best_ntok;
        st.step[i] = best_step;
        st.piece[i] = best_piece;
    }
    return st.score[0] != kNegInf;
}

} // namespace detail

// One EM step: expected piece counts by forward-backward over every
// pretoken's segmentation lattice, then log-probs reset to the normalized
// expectations. An empty corpus returns the model unchanged.
inline UnigramModel em_step(const UnigramModel& model, const Corpus& corpus,
                            int threads = 1) {
    UnigramModel next = model;
    const detail::WordList wl = detail::build_word_list(corpus);
    detail::em_step_impl(next, wl, threads);
    return next;
}

// Corpus log-likelihood under the model, summed over pretoken lattices.
inline double log_likelihood(const UnigramModel& model, const Corpus& corpus) {
    const detail::WordList wl = detail::build_word_list(corpus);
    double ll = 0.0;
    std::vector<detail::Arc> arcs;
    for (size_t wi = 0; wi < wl.size(); ++wi) {
        detail::collect_arcs(model, wl.words[wi], wl.bounds[wi], arcs);
        const size_t n = wl.bounds[wi].size() - 1;
        std::vector<double> alpha(n + 1, detail::kNegInf);
        alpha[0] = 0.0;
        for (const detail::Arc& a : arcs)
            alpha[a.end] = detail::logsumexp2(alpha[a.end], alpha[a.start] + a.logp);
        if (alpha[n] == detail::kNegInf)
            throw CoverageError("pretoken '" + wl.words[wi] +
                                "' cannot be segmented with the current pieces");
        ll += static_cast<double>(wl.freqs[wi]) * alpha[n];
    }
    return ll;
}

namespace detail {

// Loss of removing each piece, approximated by its contribution to the
// Viterbi path of every word it appears on: freq-weighted drop in path
// score when the piece is masked and the word re-segmented.
inline std::vector<double> prune_losses(const UnigramModel& model, const WordList& wl,
                                        int threads) {
    const size_t block = 1024;
    const size_t num_blocks = wl.size() == 0 ? 0 : (wl.size() + block - 1) / block;
    std::vector<std::vector<std::pair<int32_t, double>>> partials(num_blocks);
    for_blocks(wl.size(), block, threads, [&](size_t b, size_t begin, size_t end) {
        ViterbiState st, masked;
        std::unordered_map<int32_t, double> loss;
        std::vector<int32_t> path;
        for (size_t wi = begin; wi < end; ++wi) {
            const std::string& word = wl.words[wi];
            const auto& bounds = wl.bounds[wi];
            if (!viterbi_word(model, word, bounds, -1, false, st)) continue;
            const double base = st.score[0];
            path.clear();
            for (uint32_t i = 0; i < bounds.size() - 1; i += st.step[i])
                path.push_back(st.piece[i]);
            std::sort(path.begin(), path.end());
            path.erase(std::unique(path.begin(), path.end()), path.end());
            for (int32_t p : path) {
                if (p < 0 || utf8::length(model.pieces[p].first) == 1) continue;
                if (!viterbi_word(model, word, bounds, p, false, masked)) continue;
                loss[p] += static_cast<double>(wl.freqs[wi]) * (base - masked.score[0]);
            }
        }
        partials[b].assign(loss.begin(), loss.end());
        std::sort(partials[b].begin(), partials[b].end());
    });

    std::vector<double> losses(model.pieces.size(), 0.0);
    for (const auto& p : partials)
        for (const auto& [piece, value] : p) losses[piece] += value;
    return losses;
}

inline size_t prune_impl(UnigramModel& model, const WordList& wl,
                         const UnigramTrainConfig& cfg, size_t piece_target) {
    if (model.pieces.size() <= piece_target) return 0;
    const size_t shrunk =
        static_cast<size_t>(cfg.shrink_factor * static_cast<double>(model.pieces.size()));
    const size_t keep = std::max(piece_target, shrunk);
    if (model.pieces.size() <= keep) return 0;

    const std::vector<double> losses = prune_losses(model, wl, cfg.threads);
    std::vector<int32_t> removable;
    for (size_t i = 0; i < model.pieces.size(); ++i)
        if (utf8::length(model.pieces[i].first) > 1)
            removable.push_back(static_cast<int32_t>(i));
    std::sort(removable.begin(), removable.end(), [&](int32_t a, int32_t b) {
        if (losses[a] != losses[b]) return losses[a] < losses[b];
        return model.pieces[a].first < model.pieces[b].first;
    });

    const size_t want_remove = model.pieces.size() - keep;
    const size_t n_remove = std::min(want_remove, removable.size());
    if (n_remove == 0) return 0;
    std::vector<char> drop(model.pieces.size(), 0);
    for (size_t k = 0; k < n_remove; ++k) drop[removable[k]] = 1;

    std::vector<std::pair<std::string, double>> kept;
    kept.reserve(model.pieces.size() - n_remove);
    double norm = kNegInf;
    for (size_t i = 0; i < model.pieces.size(); ++i)
        if (!drop[i]) norm = logsumexp2(norm, model.pieces[i].second);
    for (size_t i = 0; i < model.pieces.size(); ++i)
        if (!drop[i])
            kept.emplace_back(model.pieces[i].first, model.pieces[i].second - norm);
    model.pieces = std::move(kept);
    model.rebuild_indexes();
    return n_remove;
}

} // namespace detail

// Removes the lowest-loss removable pieces down to
// max(target, shrink_factor * current). Single-character pieces (the space
// piece included) are never removed; survivors are renormalized.
inline UnigramModel prune_vocabulary(const UnigramModel& model, const Corpus& corpus,
                                     const UnigramTrainConfig& cfg) {
    const size_t piece_target =
        cfg.target_size > kNumSpecials ? cfg.target_size - kNumSpecials : 0;
    UnigramModel next = model;
    const detail::WordList wl = detail::build_word_list(corpus);
    detail::prune_impl(next, wl, cfg, piece_target);
    return next;
}

// Full training pipeline: seed, then rounds of EM and pruning until the
// vocabulary fits the target, then a final EM polish.
inline UnigramModel train_unigram(const Corpus& corpus, const UnigramTrainConfig& cfg,
                                  SpaceMode mode, const NormConfig& norm = {}) {
    if (cfg.shrink_factor <= 0.0 || cfg.shrink_factor >= 1.0)
        throw ConfigError("shrink_factor must be in (0, 1)");
    if (cfg.em_iterations_per_round < 1)
        throw ConfigError("em_iterations_per_round must be at least 1");
    if (cfg.seed_size < 1) throw ConfigError("seed_size must be at least 1");
    if (mode == SpaceMode::IsolatedNoSpaces)
        throw ConfigError("train in isolated mode; spaces are stripped at inference");
    if (corpus.space_mode != mode)
        throw ConfigError("corpus was normalized in a different space mode");

    const auto seeds = seed_vocabulary(corpus, cfg, mode, norm);
    size_t protected_count = 0;
    for (const auto& [piece, count] : seeds)
        if (utf8::length(piece) == 1) ++protected_count;
    if (cfg.target_size < kNumSpecials + protected_count)
        throw ConfigError("vocab size " + std::to_string(cfg.target_size) +
                          " is below the character inventory plus specials (" +
                          std::to_string(kNumSpecials + protected_count) + ")");

    UnigramModel model = detail::model_from_counts(seeds, mode, norm, cfg.target_size);
    const detail::WordList wl = detail::build_word_list(corpus);
    const size_t piece_target = cfg.target_size - kNumSpecials;
    while (model.pieces.size() > piece_target) {
        for (int k = 0; k < cfg.em_iterations_per_round; ++k)
            detail::em_step_impl(model, wl, cfg.threads);
        if (detail::prune_impl(model, wl, cfg, piece_target) == 0) break;
    }
    for (int k = 0; k < cfg.em_iterations_per_round; ++k)
        detail::em_step_impl(model, wl, cfg.threads);
    return model;
}

// Viterbi inference: per pretoken, the segmentation maximizing the summed
// piece log-probs; ties prefer fewer tokens, then leftmost-longest pieces.
// Unknown characters come out one per token under the [UNK] ID. The mode
// override exists for post-hoc space stripping; it defaults to the model's.
inline Tokenisation viterbi_tokenize(const UnigramModel& model, std::string_view line,
                                     SpaceMode mode) {
    const SpaceMode split_mode =
        model.space_mode == SpaceMode::Attached ? SpaceMode::Attached : SpaceMode::Isolated;
    Tokenisation out;
    detail::ViterbiState st;
    for (const std::string& pretoken : normalize_line(line, split_mode, model.norm)) {
        std::vector<uint32_t> bounds{0};
        size_t pos = 0;
        while (pos < pretoken.size()) {
            utf8::decode_at(pretoken, pos);
            bounds.push_back(static_cast<uint32_t>(pos));
        }
        detail::viterbi_word(model, pretoken, bounds, -1, true, st);
        for (uint32_t i = 0; i < bounds.size() - 1; i += st.step[i]) {
            std::string piece =
                pretoken.substr(bounds[i], bounds[i + st.step[i]] - bounds[i]);
            const int id = st.piece[i] >= 0 ? model.token_id(piece) : kUnkId;
            out.push_back(std::move(piece), id);
        }
    }
    if (mode == SpaceMode::IsolatedNoSpaces)
        return strip_spaces(out, model.norm.space_symbol);
    return out;
}

inline Tokenisation viterbi_tokenize(const UnigramModel& model, std::string_view line) {
    return viterbi_tokenize(model, line, model.space_mode);
}

} // namespace spacetok

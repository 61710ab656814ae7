#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "spacetok/bpe.hpp"
#include "spacetok/error.hpp"
#include "spacetok/textnorm.hpp"
#include "spacetok/types.hpp"
#include "spacetok/utf8.hpp"

namespace spacetok {

struct WordPieceModel {
    // Non-special vocabulary in ID order: single characters in code-point
    // order, then merge products in learning order.
    std::vector<std::string> tokens;
    SpaceMode space_mode = SpaceMode::Isolated;
    NormConfig norm;
    size_t target_size = 0;
    size_t max_input_word_length = 100; // code points; longer pretokens become UNK
    std::unordered_map<std::string, int> id_map;
    size_t max_token_cp = 0; // longest vocab entry in code points; not serialized

    size_t vocab_size() const { return id_map.size(); }
    int token_id(const std::string& token) const {
        auto it = id_map.find(token);
        return it == id_map.end() ? kUnkId : it->second;
    }
    void rebuild_indexes() {
        id_map.clear();
        id_map.reserve(kNumSpecials + tokens.size());
        int next = 0;
        for (const auto& s : kSpecialTokens) id_map.emplace(std::string(s), next++);
        for (const auto& t : tokens)
            if (id_map.emplace(t, next).second) ++next;
        max_token_cp = 0;
        for (const auto& t : tokens) max_token_cp = std::max(max_token_cp, utf8::length(t));
    }
};

// Trains WordPiece with the same merge loop as BPE, but picks the pair
// maximizing count(l,r) / (count(l) * count(r)). Scores are compared by
// 128-bit cross-multiplication so equal ratios tie exactly and fall back
// to the shared concatenation/left rule.
inline WordPieceModel train_wordpiece(const Corpus& corpus, size_t target_size,
                                      SpaceMode mode, const NormConfig& norm = {},
                                      const TrainOptions& opts = {}) {
    detail::MergeTrainer trainer(corpus, mode, norm, opts.threads);
    if (target_size < kNumSpecials + trainer.alphabet().size())
        throw ConfigError("vocab size " + std::to_string(target_size) +
                          " is below alphabet size plus specials (" +
                          std::to_string(kNumSpecials + trainer.alphabet().size()) + ")");

    const auto score_better = [&trainer](uint64_t key_a, int64_t count_a, uint64_t key_b,
                                         int64_t count_b) {
        const auto denom = [&trainer](uint64_t key) {
            const auto l = static_cast<int32_t>(key >> 32);
            const auto r = static_cast<int32_t>(key & 0xFFFFFFFF);
            return static_cast<unsigned __int128>(trainer.token_count(l)) *
                   static_cast<unsigned __int128>(trainer.token_count(r));
        };
        // count_a / denom_a > count_b / denom_b, cross-multiplied.
        return static_cast<unsigned __int128>(count_a) * denom(key_b) >
               static_cast<unsigned __int128>(count_b) * denom(key_a);
    };

    WordPieceModel model;
    model.space_mode = mode;
    model.norm = norm;
    model.target_size = target_size;
    const std::vector<MergeRule> merges = trainer.run(target_size, score_better);
    model.tokens = trainer.alphabet();
    model.tokens.reserve(model.tokens.size() + merges.size());
    std::unordered_set<std::string> seen(model.tokens.begin(), model.tokens.end());
    for (const auto& m : merges) {
        std::string product = m.left + m.right;
        if (seen.insert(product).second) model.tokens.push_back(std::move(product));
    }
    model.rebuild_indexes();
    return model;
}

namespace detail {

// Greedy longest-prefix segmentation of one pretoken. Returns false when
// some suffix has no matching prefix; the caller then emits whole-word UNK.
inline bool greedy_match(const WordPieceModel& model, std::string_view pretoken,
                         std::vector<std::string>& out) {
    std::vector<size_t> bounds; // byte offsets of code point boundaries
    size_t pos = 0;
    bounds.push_back(0);
    while (pos < pretoken.size()) {
        utf8::decode_at(pretoken, pos);
        bounds.push_back(pos);
    }
    const size_t n = bounds.size() - 1; // length in code points
    if (n > model.max_input_word_length) return false;

    size_t start = 0;
    while (start < n) {
        const size_t limit = std::min(n, start + std::max<size_t>(model.max_token_cp, 1));
        size_t matched = 0;
        for (size_t end = limit; end > start; --end) {
            const auto piece =
                pretoken.substr(bounds[start], bounds[end] - bounds[start]);
            // Specials are addressable by ID but are not matchable pieces.
            auto it = model.id_map.find(std::string(piece));
            if (it != model.id_map.end() && it->second >= kNumSpecials) {
                matched = end;
                break;
            }
        }
        if (matched == 0) return false;
        out.emplace_back(pretoken.substr(bounds[start], bounds[matched] - bounds[start]));
        start = matched;
    }
    return true;
}

} // namespace detail

// Tokenizes one line by greedy longest-prefix matching within each
// pretoken. A pretoken with an unmatchable suffix, or one longer than
// max_input_word_length, is kept whole under the [UNK] ID.
inline Tokenisation tokenize_wordpiece(const WordPieceModel& model, std::string_view line) {
    const SpaceMode split_mode =
        model.space_mode == SpaceMode::Attached ? SpaceMode::Attached : SpaceMode::Isolated;
    Tokenisation out;
    std::vector<std::string> pieces;
    for (const std::string& pretoken : normalize_line(line, split_mode, model.norm)) {
        pieces.clear();
        if (detail::greedy_match(model, pretoken, pieces)) {
            for (auto& p : pieces) {
                const int id = model.token_id(p);
                out.push_back(std::move(p), id);
            }
        } else {
            out.push_back(pretoken, kUnkId);
        }
    }
    if (model.space_mode == SpaceMode::IsolatedNoSpaces)
        return strip_spaces(out, model.norm.space_symbol);
    return out;
}

} // namespace spacetok

#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "spacetok/bpe.hpp"
#include "spacetok/types.hpp"
#include "spacetok/unigram.hpp"
#include "spacetok/wordpiece.hpp"

namespace spacetok {

using AnyModel = std::variant<BpeModel, UnigramModel, WordPieceModel>;

inline Algorithm algorithm_of(const AnyModel& model) {
    if (std::holds_alternative<BpeModel>(model)) return Algorithm::Bpe;
    if (std::holds_alternative<UnigramModel>(model)) return Algorithm::Unigram;
    return Algorithm::WordPiece;
}

inline SpaceMode space_mode_of(const AnyModel& model) {
    return std::visit([](const auto& m) { return m.space_mode; }, model);
}

inline const NormConfig& norm_of(const AnyModel& model) {
    return std::visit([](const auto& m) -> const NormConfig& { return m.norm; }, model);
}

inline size_t vocab_size_of(const AnyModel& model) {
    return std::visit([](const auto& m) { return m.vocab_size(); }, model);
}

inline Tokenisation tokenize(const AnyModel& model, std::string_view line) {
    return std::visit(
        [&](const auto& m) -> Tokenisation {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, BpeModel>) return tokenize_bpe(m, line);
            else if constexpr (std::is_same_v<M, UnigramModel>) return viterbi_tokenize(m, line);
            else return tokenize_wordpiece(m, line);
        },
        model);
}

// All tokens in ID order, specials included.
inline std::vector<std::string> vocabulary(const AnyModel& model) {
    const auto& id_map = std::visit(
        [](const auto& m) -> const std::unordered_map<std::string, int>& { return m.id_map; },
        model);
    std::vector<std::pair<int, std::string>> by_id;
    by_id.reserve(id_map.size());
    for (const auto& [token, id] : id_map) by_id.emplace_back(id, token);
    std::sort(by_id.begin(), by_id.end());
    std::vector<std::string> out;
    out.reserve(by_id.size());
    for (auto& [id, token] : by_id) out.push_back(std::move(token));
    return out;
}

} // namespace spacetok

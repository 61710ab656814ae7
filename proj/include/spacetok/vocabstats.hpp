#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spacetok/affixes.hpp"
#include "spacetok/types.hpp"

namespace spacetok {

namespace detail {

inline bool is_special_token(std::string_view token) {
    for (const auto& s : kSpecialTokens)
        if (token == s) return true;
    return false;
}

inline std::unordered_set<std::string> non_special_set(const std::vector<std::string>& vocab) {
    std::unordered_set<std::string> out;
    out.reserve(vocab.size());
    for (const auto& t : vocab)
        if (!is_special_token(t)) out.insert(t);
    return out;
}

inline std::string strip_leading_symbols(std::string_view token, std::string_view sym) {
    size_t cut = 0;
    while (token.size() - cut >= sym.size() &&
           token.compare(cut, sym.size(), sym) == 0)
        cut += sym.size();
    return std::string(token.substr(cut));
}

// Special tokens removed, leading space symbols stripped, deduplicated;
// entries that were nothing but space symbols vanish.
inline std::unordered_set<std::string> stripped_set(const std::vector<std::string>& vocab,
                                                    std::string_view sym) {
    std::unordered_set<std::string> out;
    out.reserve(vocab.size());
    for (const auto& t : vocab) {
        if (is_special_token(t)) continue;
        std::string s = strip_leading_symbols(t, sym);
        if (!s.empty()) out.insert(std::move(s));
    }
    return out;
}

} // namespace detail

struct DegeneracyResult {
    double ratio = 0.0; // duplicated tokens / non-special vocabulary size
    std::vector<std::pair<std::string, std::string>> duplicates; // (t, sym+t), sorted
};

// Tokens present both bare and with a leading space symbol, after special
// tokens are removed.
inline DegeneracyResult degeneracy(const std::vector<std::string>& vocab,
                                   std::string_view space_symbol = kSpaceSymbol) {
    const std::unordered_set<std::string> set = detail::non_special_set(vocab);
    DegeneracyResult res;
    for (const auto& t : set) {
        std::string spaced = std::string(space_symbol) + t;
        if (set.count(spaced)) res.duplicates.emplace_back(t, std::move(spaced));
    }
    std::sort(res.duplicates.begin(), res.duplicates.end());
    if (!set.empty())
        res.ratio = static_cast<double>(res.duplicates.size()) /
                    static_cast<double>(set.size());
    return res;
}

struct OverlapResult {
    double transferred = 0.0; // |stripped(default) ∩ modified| / |stripped(default)|
    double converse = 0.0;    // same intersection over |modified|
    size_t intersection = 0;
    size_t stripped_default_size = 0;
    size_t modified_size = 0;
};

// How much of the default (space-attached) vocabulary survives into the
// modified (space-isolated) one once leading space symbols are stripped.
inline OverlapResult overlap(const std::vector<std::string>& default_vocab,
                             const std::vector<std::string>& modified_vocab,
                             std::string_view space_symbol = kSpaceSymbol) {
    const std::unordered_set<std::string> stripped =
        detail::stripped_set(default_vocab, space_symbol);
    const std::unordered_set<std::string> modified = detail::non_special_set(modified_vocab);
    OverlapResult res;
    res.stripped_default_size = stripped.size();
    res.modified_size = modified.size();
    for (const auto& t : stripped)
        if (modified.count(t)) ++res.intersection;
    if (!stripped.empty())
        res.transferred =
            static_cast<double>(res.intersection) / static_cast<double>(stripped.size());
    if (!modified.empty())
        res.converse =
            static_cast<double>(res.intersection) / static_cast<double>(modified.size());
    return res;
}

struct AffixCounts {
    size_t prefixes = 0;
    size_t suffixes = 0;
};

// Counts space-stripped vocabulary entries exactly matching lexicon
// prefixes / suffixes.
inline AffixCounts affix_counts(const std::vector<std::string>& vocab,
                                const AffixLexicon& lexicon,
                                std::string_view space_symbol = kSpaceSymbol) {
    const std::unordered_set<std::string> stripped =
        detail::stripped_set(vocab, space_symbol);
    AffixCounts counts;
    for (const auto& t : stripped) {
        if (lexicon.prefixes.count(t)) ++counts.prefixes;
        if (lexicon.suffixes.count(t)) ++counts.suffixes;
    }
    return counts;
}

} // namespace spacetok

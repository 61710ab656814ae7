#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spacetok/error.hpp"

namespace spacetok {

// How the tokeniser treats whitespace.
//   Attached:         tokens may begin with the space symbol; every word
//                     pretoken carries a leading space symbol, including
//                     the first word of a sentence.
//   Isolated:         every space is its own token; no other token
//                     contains a space symbol.
//   IsolatedNoSpaces: Isolated output with the space tokens removed as a
//                     post-processing step (lossy).
enum class SpaceMode {
    Attached,
    Isolated,
    IsolatedNoSpaces,
};

enum class Algorithm {
    Bpe,
    Unigram,
    WordPiece,
};

inline std::string to_string(SpaceMode m) {
    switch (m) {
    case SpaceMode::Attached: return "attached";
    case SpaceMode::Isolated: return "isolated";
    case SpaceMode::IsolatedNoSpaces: return "isolated_no_spaces";
    }
    return "?";
}

inline SpaceMode space_mode_from_string(std::string_view s) {
    if (s == "attached") return SpaceMode::Attached;
    if (s == "isolated") return SpaceMode::Isolated;
    if (s == "isolated_no_spaces") return SpaceMode::IsolatedNoSpaces;
    throw FormatError("unknown space mode: " + std::string(s));
}

inline std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::Bpe: return "bpe";
    case Algorithm::Unigram: return "unigram";
    case Algorithm::WordPiece: return "wordpiece";
    }
    return "?";
}

inline Algorithm algorithm_from_string(std::string_view s) {
    if (s == "bpe") return Algorithm::Bpe;
    if (s == "unigram") return Algorithm::Unigram;
    if (s == "wordpiece") return Algorithm::WordPiece;
    throw FormatError("unknown algorithm: " + std::string(s));
}

// U+2581 LOWER ONE EIGHTH BLOCK, the sentinel standing in for whitespace.
inline constexpr std::string_view kSpaceSymbol = "\xE2\x96\x81";

// Reserved special tokens, in ID order.
inline constexpr std::array<std::string_view, 5> kSpecialTokens = {
    "[UNK]", "[PAD]", "[CLS]", "[SEP]", "[MASK]",
};
inline constexpr int kUnkId = 0;
inline constexpr int kNumSpecials = 5;

// A tokenised line: surface strings plus vocabulary IDs, parallel.
// Unknown material keeps its surface form and gets the [UNK] ID, so
// detokenisation is always possible.
struct Tokenisation {
    std::vector<std::string> pieces;
    std::vector<int> ids;

    size_t size() const { return pieces.size(); }
    bool empty() const { return pieces.empty(); }
    void push_back(std::string piece, int id) {
        pieces.push_back(std::move(piece));
        ids.push_back(id);
    }

    bool operator==(const Tokenisation& other) const = default;
};

} // namespace spacetok

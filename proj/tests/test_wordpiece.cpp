#include <algorithm>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "spacetok/bpe.hpp"
#include "spacetok/textnorm.hpp"
#include "spacetok/wordpiece.hpp"

using namespace spacetok;

namespace {

const std::string kSym = std::string(kSpaceSymbol);

WordPieceModel hand_model(std::vector<std::string> tokens,
                          SpaceMode mode = SpaceMode::Isolated) {
    WordPieceModel m;
    m.tokens = std::move(tokens);
    m.space_mode = mode;
    m.rebuild_indexes();
    return m;
}

} // namespace

TEST_CASE("rare always-together pair outranks a frequent pair") {
    // "qu qu aa aa aa": count(q,u)=2 with count(q)=count(u)=2, so its score
    // is 2/4 = 0.5; count(a,a)=3 with count(a)=6 scores 3/36 ~ 0.083.
    const Corpus c = normalize_corpus({"qu qu aa aa aa"}, SpaceMode::Isolated);

    const WordPieceModel wp = train_wordpiece(c, kNumSpecials + 4 + 1, SpaceMode::Isolated);
    REQUIRE(wp.tokens.size() == 5);
    REQUIRE(wp.tokens.back() == "qu");

    const BpeModel bpe = train_bpe(c, kNumSpecials + 4 + 1, SpaceMode::Isolated);
    REQUIRE(bpe.merges.size() == 1);
    REQUIRE(bpe.merges[0].left == "a");
    REQUIRE(bpe.merges[0].right == "a");
}

TEST_CASE("minimum budget gives a pure character vocabulary") {
    const Corpus c = normalize_corpus({"ab ab"}, SpaceMode::Isolated);
    const WordPieceModel m = train_wordpiece(c, kNumSpecials + 3, SpaceMode::Isolated);
    REQUIRE(m.tokens == std::vector<std::string>{"a", "b", kSym});
    REQUIRE_THROWS_AS(train_wordpiece(c, kNumSpecials + 2, SpaceMode::Isolated),
                      ConfigError);
}

TEST_CASE("isolated training learns no space-bearing token") {
    const Corpus c = normalize_corpus({"ab ab ab", "cd cd cd"}, SpaceMode::Isolated);
    const WordPieceModel m = train_wordpiece(c, 40, SpaceMode::Isolated);
    for (const std::string& t : m.tokens)
        if (t != kSym) REQUIRE(t.find(kSym) == std::string::npos);
}

TEST_CASE("uniform singleton counts make WordPiece agree with BPE") {
    // Scores count(l,r)/(count(l)count(r)) are order-equivalent to counts
    // when all singleton counts are equal.
    const Corpus c = normalize_corpus({"ab ab ba"}, SpaceMode::Isolated);
    const WordPieceModel wp = train_wordpiece(c, 20, SpaceMode::Isolated);
    const BpeModel bpe = train_bpe(c, 20, SpaceMode::Isolated);

    std::vector<std::string> wp_vocab = wp.tokens;
    std::vector<std::string> bpe_vocab = bpe.alphabet;
    for (const auto& rule : bpe.merges) bpe_vocab.push_back(rule.left + rule.right);
    std::sort(wp_vocab.begin(), wp_vocab.end());
    std::sort(bpe_vocab.begin(), bpe_vocab.end());
    REQUIRE(wp_vocab == bpe_vocab);
}

TEST_CASE("greedy matching takes the longest vocabulary prefix") {
    const WordPieceModel m = hand_model({"un", "beat", "able"});
    const Tokenisation t = tokenize_wordpiece(m, "unbeatable");
    REQUIRE(t.pieces == std::vector<std::string>{"un", "beat", "able"});
    REQUIRE(t.ids == std::vector<int>{5, 6, 7});

    const WordPieceModel prefixy = hand_model({"a", "ab"});
    REQUIRE(tokenize_wordpiece(prefixy, "ab").pieces == std::vector<std::string>{"ab"});
}

TEST_CASE("uncovered words become a single UNK with surface kept") {
    const WordPieceModel m = hand_model({"a", "b", kSym});
    const Tokenisation t = tokenize_wordpiece(m, "z");
    REQUIRE(t.pieces == std::vector<std::string>{"z"});
    REQUIRE(t.ids == std::vector<int>{kUnkId});

    // Greedy progress that strands the tail also falls back to whole-word UNK.
    const WordPieceModel strand = hand_model({"ab", "a"});
    const Tokenisation t2 = tokenize_wordpiece(strand, "abz");
    REQUIRE(t2.pieces == std::vector<std::string>{"abz"});
    REQUIRE(t2.ids == std::vector<int>{kUnkId});

    REQUIRE(detokenize(t2, SpaceMode::Isolated) == "abz");
}

TEST_CASE("overlong words become UNK wholesale") {
    WordPieceModel m = hand_model({"a", "b", kSym});
    m.max_input_word_length = 3;
    const Tokenisation t = tokenize_wordpiece(m, "abab a");
    REQUIRE(t.pieces == std::vector<std::string>{"abab", kSym, "a"});
    REQUIRE(t.ids[0] == kUnkId);
    REQUIRE(t.ids[2] == 5);
}

TEST_CASE("special token strings in raw text are not matchable") {
    // The dummy 5-char token forces the matcher to try the full "[UNK]"
    // prefix, which must be rejected as a reserved ID.
    const WordPieceModel m = hand_model({"[", "]", "K", "N", "U", "XXXXX", kSym});
    const Tokenisation t = tokenize_wordpiece(m, "[UNK]");
    REQUIRE(t.pieces == std::vector<std::string>{"[", "U", "N", "K", "]"});
    for (int id : t.ids) REQUIRE(id >= kNumSpecials);
}

TEST_CASE("attached model keeps the marker on word-initial tokens") {
    const Corpus c = normalize_corpus({"ab ab ab ab"}, SpaceMode::Attached);
    const WordPieceModel m = train_wordpiece(c, 20, SpaceMode::Attached);
    const Tokenisation t = tokenize_wordpiece(m, "ab ab");
    REQUIRE(t.pieces == std::vector<std::string>{kSym + "ab", kSym + "ab"});
    REQUIRE(detokenize(t, SpaceMode::Attached) == "ab ab");
}

TEST_CASE("round trip and the no-spaces variant") {
    const Corpus c = normalize_corpus({"the cat sat", "the mat sat"}, SpaceMode::Isolated);
    const WordPieceModel m = train_wordpiece(c, 30, SpaceMode::Isolated);
    const std::string norm = normalize_text("the cat sat on the mat");
    REQUIRE(detokenize(tokenize_wordpiece(m, norm), SpaceMode::Isolated) == norm);

    WordPieceModel stripped = m;
    stripped.space_mode = SpaceMode::IsolatedNoSpaces;
    const Tokenisation t = tokenize_wordpiece(stripped, norm);
    for (const std::string& p : t.pieces) REQUIRE(p != kSym);
    REQUIRE(detokenize(t, SpaceMode::IsolatedNoSpaces) == "thecatsatonthemat");
}

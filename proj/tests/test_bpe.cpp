#include <random>
#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "spacetok/bpe.hpp"
#include "spacetok/model_io.hpp"
#include "spacetok/textnorm.hpp"

using namespace spacetok;

namespace {

const std::string kSym = std::string(kSpaceSymbol);

Corpus corpus_of(const std::vector<std::string>& lines, SpaceMode mode) {
    return normalize_corpus(lines, mode);
}

std::vector<std::pair<std::string, std::string>> merge_pairs(const BpeModel& m) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& rule : m.merges) out.emplace_back(rule.left, rule.right);
    return out;
}

} // namespace

TEST_CASE("count_pairs enumerates adjacent eligible bigrams") {
    using Pair = std::pair<std::string, std::string>;

    const std::vector<std::vector<std::string>> attached = {{kSym, "a", "a"},
                                                            {kSym, "a", "a"}};
    const auto ac = count_pairs(attached, SpaceMode::Attached);
    REQUIRE(ac.size() == 2);
    REQUIRE(ac.at(Pair{kSym, "a"}) == 2);
    REQUIRE(ac.at(Pair{"a", "a"}) == 2);

    const std::vector<std::vector<std::string>> isolated = {{"a", "b"}, {kSym}, {"a", "b"}};
    const auto ic = count_pairs(isolated, SpaceMode::Isolated);
    REQUIRE(ic.size() == 1);
    REQUIRE(ic.at(Pair{"a", "b"}) == 2);

    // A flattened sentence gives the same counts: space-adjacent pairs are
    // ineligible rather than merely absent.
    const std::vector<std::vector<std::string>> flat = {{"a", "b", kSym, "a", "b"}};
    REQUIRE(count_pairs(flat, SpaceMode::Isolated) == ic);

    REQUIRE(count_pairs({}, SpaceMode::Isolated).empty());
}

TEST_CASE("pair_eligible follows the per-mode space rules") {
    REQUIRE(pair_eligible("a", "b", SpaceMode::Isolated));
    REQUIRE_FALSE(pair_eligible(kSym, "b", SpaceMode::Isolated));
    REQUIRE_FALSE(pair_eligible("a", kSym, SpaceMode::Isolated));
    REQUIRE_FALSE(pair_eligible("a" + kSym, "b", SpaceMode::Isolated));

    REQUIRE(pair_eligible(kSym + "a", "b", SpaceMode::Attached));
    REQUIRE(pair_eligible("a", "b", SpaceMode::Attached));
    REQUIRE_FALSE(pair_eligible("a", kSym + "b", SpaceMode::Attached));
    REQUIRE_FALSE(pair_eligible("a" + kSym, "b", SpaceMode::Attached));
}

TEST_CASE("one merge is learned from 'ab ab / ab'") {
    const Corpus c = corpus_of({"ab ab", "ab"}, SpaceMode::Isolated);
    // alphabet {a, b, ▁} -> minimum 8; one slot of merge budget
    const BpeModel m = train_bpe(c, 9, SpaceMode::Isolated);
    REQUIRE(merge_pairs(m) ==
            std::vector<std::pair<std::string, std::string>>{{"a", "b"}});
    REQUIRE(m.alphabet == std::vector<std::string>{"a", "b", kSym});
    REQUIRE(m.vocab_size() == 9);
}

TEST_CASE("zero merge budget yields a character-level model") {
    const Corpus c = corpus_of({"ab ab", "ab"}, SpaceMode::Isolated);
    const BpeModel m = train_bpe(c, 8, SpaceMode::Isolated);
    REQUIRE(m.merges.empty());
    const Tokenisation t = tokenize_bpe(m, "ab ab");
    REQUIRE(t.pieces == std::vector<std::string>{"a", "b", kSym, "a", "b"});
}

TEST_CASE("equal counts tie-break to the smaller concatenation") {
    // "aa aa" attached: (▁,a) and (a,a) both occur twice; "aa" < "▁a".
    const Corpus c = corpus_of({"aa aa"}, SpaceMode::Attached);
    const BpeModel m = train_bpe(c, 8, SpaceMode::Attached);
    REQUIRE(m.merges.size() == 1);
    REQUIRE(m.merges[0].left == "a");
    REQUIRE(m.merges[0].right == "a");
}

TEST_CASE("pairs below the minimum count are never merged") {
    const Corpus c = corpus_of({"ab"}, SpaceMode::Isolated);
    const BpeModel m = train_bpe(c, 20, SpaceMode::Isolated);
    REQUIRE(m.merges.empty());
}

TEST_CASE("a too-small vocab budget is a ConfigError") {
    const Corpus c = corpus_of({"ab ab"}, SpaceMode::Isolated);
    REQUIRE_THROWS_AS(train_bpe(c, 7, SpaceMode::Isolated), ConfigError);
}

TEST_CASE("tokenize_bpe applies merges in rank order") {
    BpeModel isolated;
    isolated.alphabet = {"a", "b", kSym};
    isolated.merges = {{"a", "b", 0}};
    isolated.space_mode = SpaceMode::Isolated;
    isolated.rebuild_indexes();
    const Tokenisation t = tokenize_bpe(isolated, "ab ab");
    REQUIRE(t.pieces == std::vector<std::string>{"ab", kSym, "ab"});
    REQUIRE(t.ids == std::vector<int>{8, 7, 8});

    BpeModel attached;
    attached.alphabet = {"a", "b", kSym};
    attached.merges = {{"a", "b", 0}, {kSym, "ab", 1}};
    attached.space_mode = SpaceMode::Attached;
    attached.rebuild_indexes();
    const Tokenisation t2 = tokenize_bpe(attached, "ab ab");
    REQUIRE(t2.pieces == std::vector<std::string>{kSym + "ab", kSym + "ab"});

    REQUIRE(tokenize_bpe(isolated, "").empty());
}

TEST_CASE("unknown characters surface with the UNK id") {
    const Corpus c = corpus_of({"ab ab"}, SpaceMode::Isolated);
    const BpeModel m = train_bpe(c, 9, SpaceMode::Isolated);
    const Tokenisation t = tokenize_bpe(m, "ab zb");
    REQUIRE(t.pieces == std::vector<std::string>{"ab", kSym, "z", "b"});
    REQUIRE(t.ids[2] == kUnkId);
    REQUIRE(detokenize(t, SpaceMode::Isolated) == "ab zb");
}

TEST_CASE("merging never crosses a space boundary in isolated mode") {
    const Corpus c = corpus_of({"xy xy", "y y"}, SpaceMode::Isolated);
    const BpeModel m = train_bpe(c, 20, SpaceMode::Isolated);
    const Tokenisation joint = tokenize_bpe(m, "x y");
    const Tokenisation alone = tokenize_bpe(m, "x");
    REQUIRE(std::vector<std::string>(joint.pieces.begin(), joint.pieces.begin() + 1) ==
            alone.pieces);
    REQUIRE(joint.pieces[1] == kSym);
}

TEST_CASE("training matches the brute-force reference on random corpora") {
    std::mt19937_64 rng(0x5eed0001);
    for (int iter = 0; iter < 40; ++iter) {
        std::uniform_int_distribution<int> nlines(1, 6), nwords(1, 5), extra(0, 12);
        std::vector<std::string> lines;
        for (int l = nlines(rng); l-- > 0;) {
            std::string line;
            for (int w = nwords(rng); w-- > 0;) {
                if (!line.empty()) line += ' ';
                line += oracle::random_word(rng, 6, 4);
            }
            lines.push_back(line);
        }
        const SpaceMode mode = iter % 2 ? SpaceMode::Attached : SpaceMode::Isolated;
        const Corpus c = corpus_of(lines, mode);

        std::set<std::string> alpha;
        for (const auto& sentence : c.sentences)
            for (const auto& pretoken : sentence)
                for (const auto& ch : oracle::chars_of(pretoken)) alpha.insert(ch);
        const size_t target = kNumSpecials + alpha.size() + extra(rng);

        const oracle::FlatBpe ref = oracle::train_bpe_flat(c, target);
        const BpeModel m = train_bpe(c, target, mode);
        REQUIRE(m.alphabet == ref.alphabet);
        REQUIRE(m.merges == ref.merges);
    }
}

TEST_CASE("training is deterministic across runs and thread counts") {
    std::vector<std::string> lines;
    std::mt19937_64 rng(0x5eed0002);
    for (int i = 0; i < 60; ++i) {
        std::string line;
        for (int w = 0; w < 8; ++w) {
            if (w) line += ' ';
            line += oracle::random_word(rng, 7, 6);
        }
        lines.push_back(line);
    }
    const Corpus c = corpus_of(lines, SpaceMode::Isolated);

    TrainOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const std::string a = serialize_model(train_bpe(c, 60, SpaceMode::Isolated, {}, one));
    const std::string b = serialize_model(train_bpe(c, 60, SpaceMode::Isolated, {}, one));
    const std::string d = serialize_model(train_bpe(c, 60, SpaceMode::Isolated, {}, four));
    REQUIRE(a == b);
    REQUIRE(a == d);
}

TEST_CASE("round trip over random lines in both modes") {
    std::mt19937_64 rng(0x5eed0003);
    std::vector<std::string> lines;
    for (int i = 0; i < 40; ++i) {
        std::string line;
        for (int w = 0; w < 5; ++w) {
            if (w) line += ' ';
            line += oracle::random_word(rng, 8, 5);
        }
        lines.push_back(line);
    }
    for (SpaceMode mode : {SpaceMode::Attached, SpaceMode::Isolated}) {
        const BpeModel m = train_bpe(corpus_of(lines, mode), 40, mode);
        for (const std::string& line : lines) {
            const std::string norm = normalize_text(line);
            REQUIRE(detokenize(tokenize_bpe(m, norm), mode) == norm);
        }
    }
}

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "spacetok/morphoeval.hpp"
#include "spacetok/utf8.hpp"

using namespace spacetok;

namespace {

const std::string kSym = std::string(kSpaceSymbol);

MorphRecord record(std::string word, std::vector<std::string> morphemes) {
    MorphRecord r;
    r.word = std::move(word);
    r.morphemes = std::move(morphemes);
    return r;
}

Tokenisation tokens_of(const std::vector<std::string>& pieces) {
    Tokenisation t;
    for (const auto& p : pieces) t.push_back(p, 5);
    return t;
}

// Tokenizer that reproduces every gold parse exactly.
TokenizeFn perfect_oracle(const std::vector<MorphRecord>& records) {
    auto table = std::make_shared<std::map<std::string, std::vector<std::string>>>();
    for (const auto& r : records) (*table)[r.word] = r.morphemes;
    return [table](const std::string& word) { return tokens_of(table->at(word)); };
}

TokenizeFn char_tokenizer() {
    return [](const std::string& word) {
        std::vector<std::string> pieces;
        size_t pos = 0;
        while (pos < word.size()) {
            const size_t start = pos;
            utf8::decode_at(word, pos);
            pieces.push_back(word.substr(start, pos - start));
        }
        return tokens_of(pieces);
    };
}

} // namespace

TEST_CASE("boundaries are cumulative code point offsets") {
    REQUIRE(boundaries({"un", "beat", "able"}) == BoundarySet{2, 6});
    REQUIRE(boundaries({"unbeatable"}) == BoundarySet{});
    REQUIRE(boundaries({"u", "n"}) == BoundarySet{1});
    REQUIRE(boundaries({}) == BoundarySet{});
}

TEST_CASE("boundary extraction strips space tokens and markers") {
    REQUIRE(boundaries({"un", kSym, "beat"}, kSym) == BoundarySet{2});
    REQUIRE(boundaries({kSym + "un", "beat"}, kSym) == BoundarySet{2});
    REQUIRE(boundaries({kSym}, kSym) == BoundarySet{});
    // Multi-byte text: boundaries count code points, not bytes.
    REQUIRE(boundaries({"caf\xC3\xA9", "s"}, kSym) == BoundarySet{4});
}

TEST_CASE("boundaries invert reconstruction") {
    std::mt19937_64 rng(0x5eedeee1);
    for (int iter = 0; iter < 100; ++iter) {
        std::uniform_int_distribution<int> len(1, 12), coin(0, 1);
        const int n = len(rng);
        std::string word;
        for (int i = 0; i < n; ++i) word.push_back(static_cast<char>('a' + i % 26));
        BoundarySet cuts;
        for (int i = 1; i < n; ++i)
            if (coin(rng)) cuts.insert(static_cast<uint32_t>(i));

        std::vector<std::string> pieces;
        uint32_t prev = 0;
        for (uint32_t cut : cuts) {
            pieces.push_back(word.substr(prev, cut - prev));
            prev = cut;
        }
        pieces.push_back(word.substr(prev));
        REQUIRE(boundaries(pieces) == cuts);
    }
}

TEST_CASE("score_record is plain set arithmetic") {
    const auto a = score_record(BoundarySet{2, 6}, BoundarySet{2, 6});
    REQUIRE((a.tp == 2 && a.fp == 0 && a.fn == 0));
    const auto b = score_record(BoundarySet{2, 6}, BoundarySet{3});
    REQUIRE((b.tp == 0 && b.fp == 1 && b.fn == 2));
    const auto c = score_record(BoundarySet{2, 6}, BoundarySet{2});
    REQUIRE((c.tp == 1 && c.fp == 0 && c.fn == 1));
}

TEST_CASE("count identities hold on fuzzed boundary sets") {
    std::mt19937_64 rng(0x5eedeee2);
    std::uniform_int_distribution<int> size(0, 8), val(1, 11);
    for (int iter = 0; iter < 500; ++iter) {
        BoundarySet gold, pred;
        for (int i = size(rng); i-- > 0;) gold.insert(static_cast<uint32_t>(val(rng)));
        for (int i = size(rng); i-- > 0;) pred.insert(static_cast<uint32_t>(val(rng)));
        const auto s = score_record(gold, pred);
        REQUIRE(s.tp + s.fn == static_cast<int64_t>(gold.size()));
        REQUIRE(s.tp + s.fp == static_cast<int64_t>(pred.size()));
    }
}

TEST_CASE("a lone partial match aggregates to P=100, R=50") {
    const std::vector<MorphRecord> recs = {record("unbeatable", {"un", "beat", "able"})};
    const TokenizeFn half = [](const std::string&) {
        return tokens_of({"un", "beatable"});
    };
    const EvalReport rep = evaluate(half, recs);
    REQUIRE(rep.tp == 1);
    REQUIRE(rep.fp == 0);
    REQUIRE(rep.fn == 1);
    REQUIRE_THAT(rep.precision, Catch::Matchers::WithinAbs(100.0, 1e-9));
    REQUIRE_THAT(rep.recall, Catch::Matchers::WithinAbs(50.0, 1e-9));
    REQUIRE_THAT(rep.f1, Catch::Matchers::WithinAbs(200.0 / 3.0, 1e-9));
}

TEST_CASE("a perfect tokenizer scores 100 across the board") {
    const std::vector<MorphRecord> recs = {
        record("unbeatable", {"un", "beat", "able"}),
        record("doghouse", {"dog", "house"}),
        record("cats", {"cat", "s"}),
    };
    const EvalReport rep = evaluate(perfect_oracle(recs), recs);
    REQUIRE_THAT(rep.precision, Catch::Matchers::WithinAbs(100.0, 1e-9));
    REQUIRE_THAT(rep.recall, Catch::Matchers::WithinAbs(100.0, 1e-9));
    REQUIRE_THAT(rep.f1, Catch::Matchers::WithinAbs(100.0, 1e-9));
    REQUIRE_THAT(rep.mean_sequence_length,
                 Catch::Matchers::WithinAbs((3 + 2 + 2) / 3.0, 1e-9));
    REQUIRE(rep.n_records == 3);
}

TEST_CASE("a character tokenizer has perfect recall") {
    const std::vector<MorphRecord> recs = {
        record("unbeatable", {"un", "beat", "able"}),
        record("doghouse", {"dog", "house"}),
    };
    const EvalReport rep = evaluate(char_tokenizer(), recs);
    REQUIRE_THAT(rep.recall, Catch::Matchers::WithinAbs(100.0, 1e-9));
    // 3 gold boundaries over 9+7 predicted interior boundaries.
    REQUIRE(rep.tp == 3);
    REQUIRE(rep.tp + rep.fp == 16);
    REQUIRE_THAT(rep.precision, Catch::Matchers::WithinAbs(100.0 * 3 / 16, 1e-9));
}

TEST_CASE("monomorphemic single-token records are neutral, not perfect") {
    const std::vector<MorphRecord> recs = {record("dog", {"dog"})};
    const TokenizeFn whole = [](const std::string& w) { return tokens_of({w}); };
    const EvalReport rep = evaluate(whole, recs);
    REQUIRE((rep.tp == 0 && rep.fp == 0 && rep.fn == 0));
    REQUIRE(rep.precision == 0.0);
    REQUIRE(rep.recall == 0.0);
    REQUIRE(rep.f1 == 0.0);
}

TEST_CASE("evaluation is order-invariant and thread-count-invariant") {
    std::vector<MorphRecord> recs;
    std::mt19937_64 rng(0x5eedeee3);
    std::uniform_int_distribution<int> len(2, 10), cut(0, 1);
    for (int i = 0; i < 300; ++i) {
        std::string w;
        for (int k = len(rng); k-- > 0;) w.push_back(static_cast<char>('a' + k % 7));
        std::vector<std::string> morphs;
        std::string cur;
        for (char ch : w) {
            cur.push_back(ch);
            if (cut(rng) && cur.size() >= 2) {
                morphs.push_back(cur);
                cur.clear();
            }
        }
        if (!cur.empty()) morphs.push_back(cur);
        recs.push_back(record(w, morphs));
    }
    const TokenizeFn by_pairs = [](const std::string& w) {
        std::vector<std::string> pieces;
        for (size_t i = 0; i < w.size(); i += 2) pieces.push_back(w.substr(i, 2));
        return tokens_of(pieces);
    };

    const EvalReport base = evaluate(by_pairs, recs);
    std::vector<MorphRecord> shuffled = recs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const EvalReport after = evaluate(by_pairs, shuffled);
    REQUIRE(base.tp == after.tp);
    REQUIRE(base.fp == after.fp);
    REQUIRE(base.fn == after.fn);
    REQUIRE(base.f1 == after.f1);

    EvalOptions threaded;
    threaded.threads = 4;
    const EvalReport par = evaluate(by_pairs, recs, threaded);
    REQUIRE(par.tp == base.tp);
    REQUIRE(par.mean_sequence_length == base.mean_sequence_length);
}

TEST_CASE("macro averaging is available behind the flag") {
    const std::vector<MorphRecord> recs = {
        record("unbeatable", {"un", "beat", "able"}),
        record("doghouse", {"dog", "house"}),
    };
    const TokenizeFn gold_for_first = [](const std::string& w) {
        if (w == "unbeatable") return tokens_of({"un", "beat", "able"});
        return tokens_of({w});
    };
    EvalOptions opts;
    opts.macro = true;
    const EvalReport rep = evaluate(gold_for_first, recs, opts);
    REQUIRE(rep.macro);
    // First record scores 100, second 0: the macro mean is 50.
    REQUIRE_THAT(rep.f1, Catch::Matchers::WithinAbs(50.0, 1e-9));

    const EvalReport micro = evaluate(gold_for_first, recs);
    // Micro pools counts: 2 tp, 0 fp, 1 fn.
    REQUIRE_THAT(micro.recall, Catch::Matchers::WithinAbs(200.0 / 3.0, 1e-9));
}

TEST_CASE("evaluating no records is a ConfigError") {
    REQUIRE_THROWS_AS(evaluate(char_tokenizer(), {}), ConfigError);
}

TEST_CASE("sequence length ignores space tokens") {
    const std::vector<MorphRecord> recs = {record("ab", {"a", "b"})};
    const TokenizeFn spaced = [](const std::string&) {
        return tokens_of({"a", kSym, "b"});
    };
    const EvalReport rep = evaluate(spaced, recs);
    REQUIRE_THAT(rep.mean_sequence_length, Catch::Matchers::WithinAbs(2.0, 1e-9));
}

TEST_CASE("dataset rows parse per adapter") {
    SECTION("ladec") {
        const auto rec = detail::parse_ladec_row("doghouse, dog, house");
        REQUIRE(rec.has_value());
        REQUIRE(rec->word == "doghouse");
        REQUIRE(rec->morphemes == std::vector<std::string>{"dog", "house"});
        REQUIRE_FALSE(detail::parse_ladec_row("onlyword").has_value());
    }
    SECTION("morpholex markers") {
        const auto rec = detail::parse_morpholex_row("unbeatable\tun< beat >able");
        REQUIRE(rec.has_value());
        REQUIRE(rec->morphemes == std::vector<std::string>{"un", "beat", "able"});
        REQUIRE(rec->roles == std::vector<MorphRole>{MorphRole::Prefix, MorphRole::Root,
                                                     MorphRole::Suffix});
    }
    SECTION("morphynet six columns") {
        const auto rec =
            detail::parse_morphynet_row("beat\tunbeat\tV\tV\tun\tprefix");
        REQUIRE(rec.has_value());
        REQUIRE(rec->word == "unbeat");
        REQUIRE(rec->morphemes == std::vector<std::string>{"un", "beat"});
        const auto suf = detail::parse_morphynet_row("walk\twalker\tV\tN\ter\tsuffix");
        REQUIRE(suf->morphemes == std::vector<std::string>{"walk", "er"});
        REQUIRE_FALSE(detail::parse_morphynet_row("a\tb\tV\tV\tx\tinfix").has_value());
    }
    SECTION("normalized tsv") {
        const auto rec = detail::parse_tsv_row("cats\tcat s", DatasetFormat::Dagobert);
        REQUIRE(rec.has_value());
        REQUIRE(rec->morphemes == std::vector<std::string>{"cat", "s"});
    }
}

TEST_CASE("ingestion filters non-concatenative and conflicting parses") {
    std::istringstream in(
        "cats\tcat s\n"
        "running\trun ing\n"     // does not concatenate: dropped
        "dogs\tdog s\n"
        "dogs\tdog s\n"          // identical duplicate: kept once
        "walks\twalk s\n"
        "walks\twal ks\n"        // conflicting parse: both dropped
        "broken line\n"          // malformed: no tab
        "\n");
    const IngestResult res = ingest_dataset(in, DatasetFormat::Custom);
    std::vector<std::string> words;
    for (const auto& r : res.records) words.push_back(r.word);
    REQUIRE(words == std::vector<std::string>{"cats", "dogs"});
    REQUIRE(res.dropped == 4);   // running, duplicate dogs, walks twice
    REQUIRE(res.malformed == 1);
}

TEST_CASE("ingestion honours header and duplicate flags") {
    IngestOptions opts;
    opts.skip_header = true;
    opts.unique_parse = false;
    std::istringstream in(
        "word\tparse\n"
        "cats\tcat s\n"
        "cats\tcat s\n");
    const IngestResult res = ingest_dataset(in, DatasetFormat::Custom, opts);
    REQUIRE(res.records.size() == 2);
    REQUIRE(res.dropped == 0);
}

TEST_CASE("CRLF rows ingest cleanly") {
    std::istringstream in("cats\tcat s\r\ndogs\tdog s\r\n");
    const IngestResult res = ingest_dataset(in, DatasetFormat::Custom);
    REQUIRE(res.records.size() == 2);
    REQUIRE(res.records[0].word == "cats");
}

TEST_CASE("unknown dataset formats and missing files are errors") {
    REQUIRE_THROWS_AS(dataset_format_from_string("tsv2"), FormatError);
    REQUIRE(dataset_format_from_string("ladec") == DatasetFormat::Ladec);
    REQUIRE(dataset_format_from_string("morpholex") == DatasetFormat::MorphoLex);
    REQUIRE(dataset_format_from_string("morphynet") == DatasetFormat::MorphyNet);
    REQUIRE(dataset_format_from_string("dagobert") == DatasetFormat::Dagobert);
    REQUIRE(dataset_format_from_string("custom") == DatasetFormat::Custom);
    REQUIRE_THROWS_AS(ingest_dataset_file("/nonexistent/path.tsv", DatasetFormat::Custom),
                      IoError);
}

TEST_CASE("affix subsets honour role annotations when present") {
    std::istringstream in(
        "unbeatable\tun< beat >able\n"
        "redo\tre< do\n"
        "walked\twalk >ed\n"
        "beat\tbeat\n");
    const IngestResult res = ingest_dataset(in, DatasetFormat::MorphoLex);
    REQUIRE(res.records.size() == 4);

    AffixLexicon empty;
    const auto pre = filter_affix_subset(res.records, empty, AffixSubset::PrefixOnly);
    REQUIRE(pre.size() == 1);
    REQUIRE(pre[0].word == "redo");
    const auto suf = filter_affix_subset(res.records, empty, AffixSubset::SuffixOnly);
    REQUIRE(suf.size() == 1);
    REQUIRE(suf[0].word == "walked");
}

TEST_CASE("affix subsets fall back to lexicon classification") {
    const std::vector<MorphRecord> recs = {
        record("unbeatable", {"un", "beat", "able"}),
        record("untie", {"un", "tie"}),
        record("cats", {"cat", "s"}),
        record("able", {"able"}),  // a lone affix string is a root here
        record("sunset", {"sun", "set"}),
    };
    AffixLexicon lex;
    lex.prefixes = {"un"};
    lex.suffixes = {"able", "s"};

    const auto pre = filter_affix_subset(recs, lex, AffixSubset::PrefixOnly);
    REQUIRE(pre.size() == 1);
    REQUIRE(pre[0].word == "untie");

    const auto suf = filter_affix_subset(recs, lex, AffixSubset::SuffixOnly);
    REQUIRE(suf.size() == 1);
    REQUIRE(suf[0].word == "cats");

    REQUIRE_THROWS_AS(affix_subset_from_string("both"), FormatError);
}

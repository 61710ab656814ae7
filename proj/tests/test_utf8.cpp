#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "spacetok/error.hpp"
#include "spacetok/utf8.hpp"

using namespace spacetok;

TEST_CASE("decode/encode round trip across plane boundaries") {
    const std::string samples[] = {
        "",
        "abc",
        "caf\xC3\xA9",             // é, 2-byte
        "\xE2\x96\x81word",        // ▁, 3-byte
        "\xF0\x9F\x98\x80 smile",  // 😀, 4-byte
        "mixed \xC2\xB5 \xE4\xB8\xAD \xF0\x90\x8D\x88 end",
    };
    for (const std::string& s : samples) {
        const std::u32string cps = utf8::decode(s);
        REQUIRE(utf8::encode(cps) == s);
        REQUIRE(utf8::length(s) == cps.size());
    }
}

TEST_CASE("decode_at walks one code point at a time") {
    const std::string s = "a\xC3\xA9\xE2\x96\x81\xF0\x9F\x98\x80";
    size_t pos = 0;
    REQUIRE(utf8::decode_at(s, pos) == U'a');
    REQUIRE(pos == 1);
    REQUIRE(utf8::decode_at(s, pos) == U'é');
    REQUIRE(pos == 3);
    REQUIRE(utf8::decode_at(s, pos) == U'▁');
    REQUIRE(pos == 6);
    REQUIRE(utf8::decode_at(s, pos) == U'\U0001F600');
    REQUIRE(pos == s.size());
}

TEST_CASE("malformed input raises DecodeError") {
    const std::string bad[] = {
        "\x80",              // stray continuation byte
        "\xC3",              // truncated 2-byte sequence
        "\xE2\x96",          // truncated 3-byte sequence
        "\xF0\x9F\x98",      // truncated 4-byte sequence
        "\xC0\xAF",          // overlong encoding of '/'
        "\xE0\x80\x80",      // overlong 3-byte encoding
        "\xED\xA0\x80",      // UTF-16 surrogate
        "\xF4\x90\x80\x80",  // above U+10FFFF
        "\xFE",              // invalid lead byte
        "a\xC3(z",           // continuation replaced by ASCII
    };
    for (const std::string& s : bad) {
        REQUIRE_THROWS_AS(utf8::decode(s), DecodeError);
        REQUIRE_THROWS_AS(utf8::validate(s), DecodeError);
    }
}

TEST_CASE("validate accepts well-formed input") {
    REQUIRE_NOTHROW(utf8::validate("plain ascii"));
    REQUIRE_NOTHROW(utf8::validate("\xE2\x96\x81\xF0\x9F\x98\x80"));
}

TEST_CASE("encode covers every sequence length") {
    REQUIRE(utf8::encode(U'a') == "a");
    REQUIRE(utf8::encode(U'é') == "\xC3\xA9");
    REQUIRE(utf8::encode(U'▁') == "\xE2\x96\x81");
    REQUIRE(utf8::encode(U'\U0001F600') == "\xF0\x9F\x98\x80");
}

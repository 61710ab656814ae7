#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "spacetok/error.hpp"

namespace spacetok::utf8 {

// Number of bytes of the UTF-8 sequence starting with byte b, or 0 if b
// cannot start a sequence.
inline int sequence_length(unsigned char b) {
    if (b < 0x80) return 1;
    if ((b & 0xE0) == 0xC0) return 2;
    if ((b & 0xF0) == 0xE0) return 3;
    if ((b & 0xF8) == 0xF0) return 4;
    return 0;
}

// Decodes the code point at s[pos]. Advances pos past it.
// Throws DecodeError on malformed input (truncated sequences, bad
// continuation bytes, overlong encodings, surrogates, out-of-range).
inline char32_t decode_at(std::string_view s, size_t& pos) {
    const unsigned char b0 = static_cast<unsigned char>(s[pos]);
    const int len = sequence_length(b0);
    if (len == 0 || pos + len > s.size())
        throw DecodeError("invalid UTF-8 at byte offset " + std::to_string(pos));
    char32_t cp = 0;
    switch (len) {
    case 1:
        cp = b0;
        break;
    case 2:
        cp = b0 & 0x1F;
        break;
    case 3:
        cp = b0 & 0x0F;
        break;
    default:
        cp = b0 & 0x07;
        break;
    }
    for (int i = 1; i < len; ++i) {
        const unsigned char b = static_cast<unsigned char>(s[pos + i]);
        if ((b & 0xC0) != 0x80)
            throw DecodeError("invalid UTF-8 continuation at byte offset " +
                              std::to_string(pos + i));
        cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLen[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
        throw DecodeError("invalid UTF-8 scalar at byte offset " + std::to_string(pos));
    pos += len;
    return cp;
}

inline std::u32string decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    size_t pos = 0;
    while (pos < s.size()) out.push_back(decode_at(s, pos));
    return out;
}

inline void append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode(char32_t cp) {
    std::string out;
    append(out, cp);
    return out;
}

inline std::string encode(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append(out, cp);
    return out;
}

inline void validate(std::string_view s) {
    size_t pos = 0;
    while (pos < s.size()) decode_at(s, pos);
}

// Code point count of a valid UTF-8 string.
inline size_t length(std::string_view s) {
    size_t n = 0, pos = 0;
    while (pos < s.size()) {
        decode_at(s, pos);
        ++n;
    }
    return n;
}

} // namespace spacetok::utf8

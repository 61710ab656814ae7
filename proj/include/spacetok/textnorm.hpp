#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "spacetok/error.hpp"
#include "spacetok/types.hpp"
#include "spacetok/utf8.hpp"

#ifdef SPACETOK_WITH_ICU
#include <unicode/errorcode.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#endif

namespace spacetok {

enum class UnicodeNorm {
    None,
    Nfkc,
};

struct NormConfig {
    // Must be a single code point and must not occur in raw input.
    std::string space_symbol = std::string(kSpaceSymbol);
    UnicodeNorm unicode_normalization = UnicodeNorm::None;
    bool collapse_repeated_whitespace = true;
};

// A normalized training corpus: one pretoken sequence per sentence.
// Pretokens are non-empty UTF-8 strings; the only space-like character
// anywhere is the configured space symbol.
struct Corpus {
    std::vector<std::vector<std::string>> sentences;
    SpaceMode space_mode = SpaceMode::Isolated;
};

namespace detail {

inline bool is_whitespace_cp(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\r' || cp == U'\n' ||
           cp == U'\v' || cp == U'\f';
}

inline char32_t space_symbol_cp(const NormConfig& cfg) {
    size_t pos = 0;
    const char32_t cp = utf8::decode_at(cfg.space_symbol, pos);
    if (pos != cfg.space_symbol.size())
        throw ConfigError("space symbol must be a single code point");
    if (is_whitespace_cp(cp))
        throw ConfigError("space symbol must not be a whitespace character");
    return cp;
}

#ifdef SPACETOK_WITH_ICU
inline std::u32string nfkc(const std::u32string& in) {
    icu::ErrorCode status;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFKCInstance(status);
    if (status.isFailure()) throw Error("ICU NFKC instance unavailable");
    icu::UnicodeString src = icu::UnicodeString::fromUTF32(
        reinterpret_cast<const UChar32*>(in.data()), static_cast<int32_t>(in.size()));
    icu::UnicodeString dst = norm->normalize(src, status);
    if (status.isFailure()) throw Error("ICU NFKC normalization failed");
    std::u32string out(static_cast<size_t>(dst.countChar32()), U'\0');
    icu::ErrorCode status2;
    dst.toUTF32(reinterpret_cast<UChar32*>(out.data()),
                static_cast<int32_t>(out.size()), status2);
    if (status2.isFailure()) throw Error("ICU NFKC conversion failed");
    return out;
}
#endif

// Whitespace replacement and (optional) collapsing, on code points.
// With collapsing enabled the result has no leading, trailing, or
// repeated space symbols.
inline std::u32string replace_whitespace(const std::u32string& in, char32_t space_cp,
                                         bool collapse) {
    std::u32string out;
    out.reserve(in.size());
    for (char32_t cp : in) {
        if (is_whitespace_cp(cp)) {
            if (collapse && (out.empty() || out.back() == space_cp)) continue;
            out.push_back(space_cp);
        } else {
            out.push_back(cp);
        }
    }
    if (collapse && !out.empty() && out.back() == space_cp) out.pop_back();
    return out;
}

} // namespace detail

// Canonical whitespace form of a raw line: runs of whitespace collapsed to
// single spaces and ends trimmed (when enabled). This is the domain on
// which tokenisation round-trips exactly.
inline std::string normalize_text(std::string_view line, const NormConfig& cfg = {}) {
    const char32_t space_cp = detail::space_symbol_cp(cfg);
    std::u32string cps = utf8::decode(line);
#ifdef SPACETOK_WITH_ICU
    if (cfg.unicode_normalization == UnicodeNorm::Nfkc) cps = detail::nfkc(cps);
#else
    if (cfg.unicode_normalization == UnicodeNorm::Nfkc)
        throw ConfigError("NFKC normalization requires an ICU-enabled build");
#endif
    for (char32_t cp : cps)
        if (cp == space_cp)
            throw NormalizationError("input contains the space symbol literal");
    const std::u32string replaced =
        detail::replace_whitespace(cps, space_cp, cfg.collapse_repeated_whitespace);
    std::string out;
    for (char32_t cp : replaced) utf8::append(out, cp == space_cp ? U' ' : cp);
    return out;
}

// Normalizes one line into mode-dependent pretokens.
//   Attached: a space symbol is prepended to the sentence, then the line is
//             split before every space symbol, so each word pretoken carries
//             a leading space symbol.
//   Isolated: words and space symbols are separate pretokens.
// An empty (or all-whitespace, when collapsing) line yields no pretokens.
inline std::vector<std::string> normalize_line(std::string_view line, SpaceMode mode,
                                               const NormConfig& cfg = {}) {
    const char32_t space_cp = detail::space_symbol_cp(cfg);
    std::u32string cps = utf8::decode(line);
#ifdef SPACETOK_WITH_ICU
    if (cfg.unicode_normalization == UnicodeNorm::Nfkc) cps = detail::nfkc(cps);
#else
    if (cfg.unicode_normalization == UnicodeNorm::Nfkc)
        throw ConfigError("NFKC normalization requires an ICU-enabled build");
#endif
    for (char32_t cp : cps)
        if (cp == space_cp)
            throw NormalizationError("input contains the space symbol literal");

    std::u32string text =
        detail::replace_whitespace(cps, space_cp, cfg.collapse_repeated_whitespace);
    if (text.empty()) return {};

    std::vector<std::string> pretokens;
    if (mode == SpaceMode::Attached) {
        text.insert(text.begin(), space_cp);
        size_t start = 0;
        for (size_t i = 1; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == space_cp) {
                pretokens.push_back(utf8::encode(
                    std::u32string_view(text.data() + start, i - start)));
                start = i;
            }
        }
    } else {
        size_t i = 0;
        while (i < text.size()) {
            if (text[i] == space_cp) {
                pretokens.push_back(cfg.space_symbol);
                ++i;
            } else {
                size_t j = i;
                while (j < text.size() && text[j] != space_cp) ++j;
                pretokens.push_back(
                    utf8::encode(std::u32string_view(text.data() + i, j - i)));
                i = j;
            }
        }
    }
    return pretokens;
}

inline Corpus normalize_corpus(const std::vector<std::string>& lines, SpaceMode mode,
                               const NormConfig& cfg = {}) {
    Corpus corpus;
    corpus.space_mode = mode;
    corpus.sentences.reserve(lines.size());
    for (const std::string& line : lines)
        corpus.sentences.push_back(normalize_line(line, mode, cfg));
    return corpus;
}

inline Corpus normalize_corpus(std::initializer_list<const char*> lines, SpaceMode mode,
                               const NormConfig& cfg = {}) {
    return normalize_corpus(std::vector<std::string>(lines.begin(), lines.end()), mode, cfg);
}

// Splits raw text into lines (LF-terminated) and normalizes each.
inline Corpus normalize_corpus(std::string_view raw, SpaceMode mode,
                               const NormConfig& cfg = {}) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= raw.size()) {
        const size_t nl = raw.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < raw.size()) lines.emplace_back(raw.substr(start));
            break;
        }
        lines.emplace_back(raw.substr(start, nl - start));
        start = nl + 1;
    }
    return normalize_corpus(lines, mode, cfg);
}

// Maps token strings back to text. Attached/Isolated reproduce the exact
// normalized input; IsolatedNoSpaces reproduces it with whitespace removed.
inline std::string detokenize(const std::vector<std::string>& pieces, SpaceMode mode,
                              const NormConfig& cfg = {}) {
    const char32_t space_cp = detail::space_symbol_cp(cfg);
    std::string joined;
    for (const std::string& p : pieces) joined += p;

    std::string out;
    const std::u32string cps = utf8::decode(joined);
    for (char32_t cp : cps) {
        if (cp == space_cp) {
            if (mode != SpaceMode::IsolatedNoSpaces) utf8::append(out, U' ');
        } else {
            utf8::append(out, cp);
        }
    }
    if (mode == SpaceMode::Attached && !out.empty() && out.front() == ' ')
        out.erase(out.begin());
    return out;
}

inline std::string detokenize(const Tokenisation& tokens, SpaceMode mode,
                              const NormConfig& cfg = {}) {
    return detokenize(tokens.pieces, mode, cfg);
}

// Removes every token equal to the space symbol; order and IDs of the
// remaining tokens are preserved. Idempotent.
inline Tokenisation strip_spaces(const Tokenisation& tokens,
                                 std::string_view space_symbol = kSpaceSymbol) {
    Tokenisation out;
    out.pieces.reserve(tokens.size());
    out.ids.reserve(tokens.size());
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (tokens.pieces[i] == space_symbol) continue;
        out.push_back(tokens.pieces[i], tokens.ids[i]);
    }
    return out;
}

} // namespace spacetok

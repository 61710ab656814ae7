#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "spacetok/error.hpp"
#include "spacetok/types.hpp"

namespace spacetok {

namespace detail {

inline std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace detail

// Prefix/suffix string inventories used for vocabulary affix counts and
// dataset subset filtering. File format: UTF-8, one affix per line,
// under "[prefixes]" / "[suffixes]" section headers; blank lines and
// lines starting with '#' are ignored. Entries are lowercased on load.
struct AffixLexicon {
    std::unordered_set<std::string> prefixes;
    std::unordered_set<std::string> suffixes;
    std::string source;

    static AffixLexicon parse(std::istream& in, std::string_view space_symbol = kSpaceSymbol) {
        AffixLexicon lex;
        std::unordered_set<std::string>* section = nullptr;
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string entry = detail::trim(line);
            if (entry.empty() || entry[0] == '#') continue;
            if (entry == "[prefixes]") {
                section = &lex.prefixes;
                continue;
            }
            if (entry == "[suffixes]") {
                section = &lex.suffixes;
                continue;
            }
            if (!section)
                throw FormatError("affix lexicon line " + std::to_string(lineno) +
                                  " appears before any [prefixes]/[suffixes] header");
            if (entry.find(space_symbol) != std::string::npos)
                throw FormatError("affix lexicon line " + std::to_string(lineno) +
                                  " contains the space symbol");
            std::transform(entry.begin(), entry.end(), entry.begin(), [](unsigned char c) {
                return static_cast<char>(std::tolower(c));
            });
            section->insert(std::move(entry));
        }
        return lex;
    }

    static AffixLexicon load(const std::string& path,
                             std::string_view space_symbol = kSpaceSymbol) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open affix lexicon: " + path);
        AffixLexicon lex = parse(in, space_symbol);
        lex.source = path;
        return lex;
    }
};

} // namespace spacetok

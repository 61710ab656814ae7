#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_set>
#include <vector>

#include "spacetok/error.hpp"
#include "spacetok/tokenizer.hpp"
#include "spacetok/types.hpp"

// Versioned plain-text model format. Line 1 is a magic string; then a
// fixed sequence of TAB-separated header lines (algorithm, space_mode,
// space_symbol, specials, normalization, target_size, one per-algorithm
// line, entries); then exactly `entries` body lines. BPE bodies are
// "left<TAB>right<TAB>rank", Unigram "piece<TAB>logprob" in lexicographic
// piece order, WordPiece "token" in ID order. Loading then saving any
// valid file reproduces it byte for byte; log-probs use the shortest
// decimal that round-trips the double.

namespace spacetok {

namespace detail {

constexpr std::string_view kModelMagic = "spacetok model v1";

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, size_t lineno) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw FormatError("model line " + std::to_string(lineno) +
                          ": malformed number '" + std::string(s) + "'");
    return v;
}

inline size_t parse_size(std::string_view s, size_t lineno) {
    size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw FormatError("model line " + std::to_string(lineno) +
                          ": malformed count '" + std::string(s) + "'");
    return v;
}

inline std::string specials_line() {
    std::string out;
    for (size_t i = 0; i < kNumSpecials; ++i) {
        if (i) out += ' ';
        out += kSpecialTokens[i];
    }
    return out;
}

inline void write_header(std::string& out, Algorithm algo, SpaceMode mode,
                         const NormConfig& norm, size_t target_size) {
    out += kModelMagic;
    out += '\n';
    out += "algorithm\t";
    out += to_string(algo);
    out += '\n';
    out += "space_mode\t";
    out += to_string(mode);
    out += '\n';
    out += "space_symbol\t";
    out += norm.space_symbol;
    out += '\n';
    out += "specials\t";
    out += specials_line();
    out += '\n';
    out += "normalization\tnfkc=";
    out += norm.unicode_normalization == UnicodeNorm::Nfkc ? '1' : '0';
    out += " collapse_whitespace=";
    out += norm.collapse_repeated_whitespace ? '1' : '0';
    out += '\n';
    out += "target_size\t";
    out += std::to_string(target_size);
    out += '\n';
}

} // namespace detail

inline std::string serialize_model(const BpeModel& model) {
    std::string out;
    detail::write_header(out, Algorithm::Bpe, model.space_mode, model.norm,
                         model.target_size);
    out += "alphabet\t";
    for (size_t i = 0; i < model.alphabet.size(); ++i) {
        if (i) out += ' ';
        out += model.alphabet[i];
    }
    out += '\n';
    out += "entries\t" + std::to_string(model.merges.size()) + '\n';
    for (const auto& m : model.merges) {
        out += m.left;
        out += '\t';
        out += m.right;
        out += '\t';
        out += std::to_string(m.rank);
        out += '\n';
    }
    return out;
}

inline std::string serialize_model(const UnigramModel& model) {
    std::string out;
    detail::write_header(out, Algorithm::Unigram, model.space_mode, model.norm,
                         model.target_size);
    out += "entries\t" + std::to_string(model.pieces.size()) + '\n';
    for (const auto& [piece, logp] : model.pieces) {
        out += piece;
        out += '\t';
        out += detail::format_double(logp);
        out += '\n';
    }
    return out;
}

inline std::string serialize_model(const WordPieceModel& model) {
    std::string out;
    detail::write_header(out, Algorithm::WordPiece, model.space_mode, model.norm,
                         model.target_size);
    out += "max_word_length\t" + std::to_string(model.max_input_word_length) + '\n';
    out += "entries\t" + std::to_string(model.tokens.size()) + '\n';
    for (const auto& t : model.tokens) {
        out += t;
        out += '\n';
    }
    return out;
}

inline std::string serialize_model(const AnyModel& model) {
    return std::visit([](const auto& m) { return serialize_model(m); }, model);
}

namespace detail {

class ModelReader {
public:
    explicit ModelReader(std::string_view text) : text_(text) {}

    // Returns the next line, without its terminator. Every line including
    // the last must end in '\n'.
    std::string_view next_line() {
        if (pos_ >= text_.size())
            throw FormatError("model file truncated at line " + std::to_string(lineno_ + 1));
        const size_t nl = text_.find('\n', pos_);
        if (nl == std::string_view::npos)
            throw FormatError("model file: missing final newline");
        std::string_view line = text_.substr(pos_, nl - pos_);
        pos_ = nl + 1;
        ++lineno_;
        return line;
    }

    std::string_view header_value(std::string_view key) {
        const std::string_view line = next_line();
        const size_t tab = line.find('\t');
        if (tab == std::string_view::npos || line.substr(0, tab) != key)
            throw FormatError("model line " + std::to_string(lineno_) + ": expected '" +
                              std::string(key) + "<TAB>...'");
        return line.substr(tab + 1);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    size_t lineno() const { return lineno_; }

private:
    std::string_view text_;
    size_t pos_ = 0;
    size_t lineno_ = 0;
};

struct ModelHeader {
    Algorithm algorithm;
    SpaceMode space_mode;
    NormConfig norm;
    size_t target_size = 0;
};

inline ModelHeader read_header(ModelReader& r) {
    if (r.next_line() != kModelMagic)
        throw FormatError("not a spacetok model file (bad magic line)");
    ModelHeader h;
    h.algorithm = algorithm_from_string(std::string(r.header_value("algorithm")));
    h.space_mode = space_mode_from_string(std::string(r.header_value("space_mode")));
    h.norm.space_symbol = std::string(r.header_value("space_symbol"));
    if (std::string(r.header_value("specials")) != specials_line())
        throw FormatError("model file declares an unsupported special token set");
    const std::string norm_line(r.header_value("normalization"));
    if (norm_line == "nfkc=0 collapse_whitespace=0") {
        h.norm.unicode_normalization = UnicodeNorm::None;
        h.norm.collapse_repeated_whitespace = false;
    } else if (norm_line == "nfkc=0 collapse_whitespace=1") {
        h.norm.unicode_normalization = UnicodeNorm::None;
        h.norm.collapse_repeated_whitespace = true;
    } else if (norm_line == "nfkc=1 collapse_whitespace=0") {
        h.norm.unicode_normalization = UnicodeNorm::Nfkc;
        h.norm.collapse_repeated_whitespace = false;
    } else if (norm_line == "nfkc=1 collapse_whitespace=1") {
        h.norm.unicode_normalization = UnicodeNorm::Nfkc;
        h.norm.collapse_repeated_whitespace = true;
    } else {
        throw FormatError("model file: unrecognized normalization line");
    }
    h.target_size = parse_size(r.header_value("target_size"), r.lineno());
    return h;
}

inline std::vector<std::string> split_single_spaces(std::string_view s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    size_t start = 0;
    while (true) {
        const size_t sp = s.find(' ', start);
        if (sp == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, sp - start));
        start = sp + 1;
    }
    return out;
}

} // namespace detail

inline AnyModel parse_model(std::string_view text) {
    detail::ModelReader r(text);
    const detail::ModelHeader h = detail::read_header(r);

    AnyModel out;
    if (h.algorithm == Algorithm::Bpe) {
        BpeModel model;
        model.space_mode = h.space_mode;
        model.norm = h.norm;
        model.target_size = h.target_size;
        model.alphabet = detail::split_single_spaces(r.header_value("alphabet"));
        for (size_t i = 0; i < model.alphabet.size(); ++i) {
            if (model.alphabet[i].empty())
                throw FormatError("model file: empty alphabet entry");
            if (i > 0 && model.alphabet[i] <= model.alphabet[i - 1])
                throw FormatError("model file: alphabet not in ascending order");
        }
        const size_t entries = detail::parse_size(r.header_value("entries"), r.lineno());
        model.merges.reserve(entries);
        for (size_t i = 0; i < entries; ++i) {
            const std::string_view line = r.next_line();
            const size_t t1 = line.find('\t');
            const size_t t2 = t1 == std::string_view::npos
                                  ? std::string_view::npos
                                  : line.find('\t', t1 + 1);
            if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
                line.find('\t', t2 + 1) != std::string_view::npos)
                throw FormatError("model line " + std::to_string(r.lineno())
                                  + ": expected 'left<TAB>right<TAB>rank'");
            MergeRule m;
            m.left = std::string(line.substr(0, t1));
            m.right = std::string(line.substr(t1 + 1, t2 - t1 - 1));
            m.rank = static_cast<int>(
                detail::parse_size(line.substr(t2 + 1), r.lineno()));
            if (m.left.empty() || m.right.empty())
                throw FormatError("model line " + std::to_string(r.lineno()) +
                                  ": empty merge side");
            if (m.rank != static_cast<int>(i))
                throw FormatError("model line " + std::to_string(r.lineno()) +
                                  ": merge ranks must be contiguous from 0");
            model.merges.push_back(std::move(m));
        }
        model.rebuild_indexes();
        out = std::move(model);
    } else if (h.algorithm == Algorithm::Unigram) {
        UnigramModel model;
        model.space_mode = h.space_mode;
        model.norm = h.norm;
        model.target_size = h.target_size;
        const size_t entries = detail::parse_size(r.header_value("entries"), r.lineno());
        model.pieces.reserve(entries);
        for (size_t i = 0; i < entries; ++i) {
            const std::string_view line = r.next_line();
            const size_t tab = line.find('\t');
            if (tab == std::string_view::npos ||
                line.find('\t', tab + 1) != std::string_view::npos)
                throw FormatError("model line " + std::to_string(r.lineno()) +
                                  ": expected 'piece<TAB>logprob'");
            std::string piece(line.substr(0, tab));
            if (piece.empty())
                throw FormatError("model line " + std::to_string(r.lineno()) +
                                  ": empty piece");
            if (!model.pieces.empty() && piece <= model.pieces.back().first)
                throw FormatError("model line " + std::to_string(r.lineno()) +
                                  ": pieces must be unique and in lexicographic order");
            const double logp = detail::parse_double(line.substr(tab + 1), r.lineno());
            model.pieces.emplace_back(std::move(piece), logp);
        }
        model.rebuild_indexes();
        out = std::move(model);
    } else {
        WordPieceModel model;
        model.space_mode = h.space_mode;
        model.norm = h.norm;
        model.target_size = h.target_size;
        model.max_input_word_length =
            detail::parse_size(r.header_value("max_word_length"), r.lineno());
        const size_t entries = detail::parse_size(r.header_value("entries"), r.lineno());
        model.tokens.reserve(entries);
        std::unordered_set<std::string_view> seen;
        for (size_t i = 0; i < entries; ++i) {
            const std::string_view line = r.next_line();
            if (line.empty() || line.find('\t') != std::string_view::npos)
                throw FormatError("model line " + std::to_string(r.lineno()) +
                                  ": expected a bare token");
            model.tokens.emplace_back(line);
        }
        for (const auto& t : model.tokens)
            if (!seen.insert(t).second)
                throw FormatError("model file: duplicate token '" + t + "'");
        model.rebuild_indexes();
        out = std::move(model);
    }

    if (!r.at_end())
        throw FormatError("model file: trailing content after line " +
                          std::to_string(r.lineno()));
    // Validates the space symbol (single non-whitespace code point).
    detail::space_symbol_cp(norm_of(out));
    return out;
}

inline void save_model(const AnyModel& model, const std::string& path) {
    const std::string text = serialize_model(model);
    std::ofstream outf(path, std::ios::binary | std::ios::trunc);
    if (!outf) throw IoError("cannot open model file for writing: " + path);
    outf.write(text.data(), static_cast<std::streamsize>(text.size()));
    outf.flush();
    if (!outf) throw IoError("failed writing model file: " + path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading file: " + path);
    return text;
}

inline AnyModel load_model(const std::string& path) { return parse_model(read_file(path)); }

inline BpeModel load_bpe(const std::string& path) {
    AnyModel m = load_model(path);
    if (auto* p = std::get_if<BpeModel>(&m)) return std::move(*p);
    throw FormatError("model file " + path + " is not a bpe model");
}

inline UnigramModel load_unigram(const std::string& path) {
    AnyModel m = load_model(path);
    if (auto* p = std::get_if<UnigramModel>(&m)) return std::move(*p);
    throw FormatError("model file " + path + " is not a unigram model");
}

inline WordPieceModel load_wordpiece(const std::string& path) {
    AnyModel m = load_model(path);
    if (auto* p = std::get_if<WordPieceModel>(&m)) return std::move(*p);
    throw FormatError("model file " + path + " is not a wordpiece model");
}

} // namespace spacetok

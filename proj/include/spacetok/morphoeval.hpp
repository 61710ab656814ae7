#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "spacetok/affixes.hpp"
#include "spacetok/detail/parallel.hpp"
#include "spacetok/error.hpp"
#include "spacetok/types.hpp"
#include "spacetok/utf8.hpp"

namespace spacetok {

enum class DatasetFormat { Ladec, MorphoLex, MorphyNet, Dagobert, Custom };

inline std::string to_string(DatasetFormat f) {
    switch (f) {
        case DatasetFormat::Ladec: return "ladec";
        case DatasetFormat::MorphoLex: return "morpholex";
        case DatasetFormat::MorphyNet: return "morphynet";
        case DatasetFormat::Dagobert: return "dagobert";
        case DatasetFormat::Custom: return "custom";
    }
    return "custom";
}

inline DatasetFormat dataset_format_from_string(std::string_view s) {
    if (s == "ladec") return DatasetFormat::Ladec;
    if (s == "morpholex") return DatasetFormat::MorphoLex;
    if (s == "morphynet") return DatasetFormat::MorphyNet;
    if (s == "dagobert") return DatasetFormat::Dagobert;
    if (s == "custom") return DatasetFormat::Custom;
    throw FormatError("unknown dataset format: " + std::string(s));
}

enum class MorphRole { Root, Prefix, Suffix };

// One gold-standard morphological parse. The morphemes concatenate to the
// word exactly; roles are parallel to morphemes when the source dataset
// annotates them, empty otherwise.
struct MorphRecord {
    std::string word;
    std::vector<std::string> morphemes;
    std::vector<MorphRole> roles;
    DatasetFormat source = DatasetFormat::Custom;
};

struct IngestOptions {
    bool skip_header = false;
    // Keep one copy of identical duplicate parses and drop every parse of a
    // word that appears with conflicting ones.
    bool unique_parse = true;
};

struct IngestResult {
    std::vector<MorphRecord> records;
    size_t dropped = 0;   // well-formed rows excluded by a filter
    size_t malformed = 0; // rows that did not parse
};

namespace detail {

inline std::vector<std::string> split_fields(std::string_view line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline std::vector<std::string> split_space(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        const size_t start = i;
        while (i < s.size() && s[i] != ' ') ++i;
        if (i > start) out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

inline std::optional<MorphRecord> parse_ladec_row(const std::string& line) {
    std::vector<std::string> cols = split_fields(line, ',');
    if (cols.size() < 3) return std::nullopt;
    MorphRecord rec;
    rec.source = DatasetFormat::Ladec;
    rec.word = trim(cols[0]);
    for (size_t i = 1; i < cols.size(); ++i) {
        std::string m = trim(cols[i]);
        if (m.empty()) return std::nullopt;
        rec.morphemes.push_back(std::move(m));
    }
    if (rec.word.empty()) return std::nullopt;
    return rec;
}

// MorphoLex rows arrive pre-converted as "word<TAB>un< beat >able": a
// trailing '<' marks a prefix, a leading '>' marks a suffix.
inline std::optional<MorphRecord> parse_morpholex_row(const std::string& line) {
    std::vector<std::string> cols = split_fields(line, '\t');
    if (cols.size() != 2) return std::nullopt;
    MorphRecord rec;
    rec.source = DatasetFormat::MorphoLex;
    rec.word = trim(cols[0]);
    if (rec.word.empty()) return std::nullopt;
    for (const std::string& tok : split_space(cols[1])) {
        std::string m = tok;
        MorphRole role = MorphRole::Root;
        if (m.size() > 1 && m.back() == '<') {
            role = MorphRole::Prefix;
            m.pop_back();
        } else if (m.size() > 1 && m.front() == '>') {
            role = MorphRole::Suffix;
            m.erase(m.begin());
        }
        rec.morphemes.push_back(std::move(m));
        rec.roles.push_back(role);
    }
    if (rec.morphemes.empty()) return std::nullopt;
    return rec;
}

// MorphyNet derivational rows: base, derived, base POS, derived POS,
// affix, {prefix|suffix}. The parse is [affix, base] or [base, affix].
inline std::optional<MorphRecord> parse_morphynet_row(const std::string& line) {
    std::vector<std::string> cols = split_fields(line, '\t');
    if (cols.size() < 6) return std::nullopt;
    const std::string base = trim(cols[0]);
    const std::string derived = trim(cols[1]);
    const std::string affix = trim(cols[4]);
    const std::string kind = trim(cols[5]);
    if (base.empty() || derived.empty() || affix.empty()) return std::nullopt;
    MorphRecord rec;
    rec.source = DatasetFormat::MorphyNet;
    rec.word = derived;
    if (kind == "prefix") {
        rec.morphemes = {affix, base};
        rec.roles = {MorphRole::Prefix, MorphRole::Root};
    } else if (kind == "suffix") {
        rec.morphemes = {base, affix};
        rec.roles = {MorphRole::Root, MorphRole::Suffix};
    } else {
        return std::nullopt;
    }
    return rec;
}

// The normalized format: "word<TAB>morph1 morph2 ...".
inline std::optional<MorphRecord> parse_tsv_row(const std::string& line,
                                                DatasetFormat source) {
    std::vector<std::string> cols = split_fields(line, '\t');
    if (cols.size() != 2) return std::nullopt;
    MorphRecord rec;
    rec.source = source;
    rec.word = trim(cols[0]);
    if (rec.word.empty()) return std::nullopt;
    rec.morphemes = split_space(cols[1]);
    if (rec.morphemes.empty()) return std::nullopt;
    return rec;
}

inline bool concatenative(const MorphRecord& rec) {
    size_t total = 0;
    for (const auto& m : rec.morphemes) total += m.size();
    if (total != rec.word.size()) return false;
    size_t pos = 0;
    for (const auto& m : rec.morphemes) {
        if (rec.word.compare(pos, m.size(), m) != 0) return false;
        pos += m.size();
    }
    return true;
}

inline std::string parse_key(const MorphRecord& rec) {
    std::string key;
    for (const auto& m : rec.morphemes) {
        key += m;
        key += '\x1f';
    }
    return key;
}

} // namespace detail

// Parses a gold segmentation dataset. Non-concatenative parses are
// dropped; with unique_parse, duplicate identical parses collapse to one
// and words with conflicting parses are removed entirely.
inline IngestResult ingest_dataset(std::istream& in, DatasetFormat format,
                                   const IngestOptions& opts = {}) {
    IngestResult result;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const bool skip = first && opts.skip_header;
        first = false;
        if (skip) continue;
        if (line.empty()) continue;

        std::optional<MorphRecord> rec;
        switch (format) {
            case DatasetFormat::Ladec: rec = detail::parse_ladec_row(line); break;
            case DatasetFormat::MorphoLex: rec = detail::parse_morpholex_row(line); break;
            case DatasetFormat::MorphyNet: rec = detail::parse_morphynet_row(line); break;
            case DatasetFormat::Dagobert:
            case DatasetFormat::Custom: rec = detail::parse_tsv_row(line, format); break;
        }
        if (!rec) {
            ++result.malformed;
            continue;
        }
        bool empty_morph = false;
        for (const auto& m : rec->morphemes) empty_morph = empty_morph || m.empty();
        if (empty_morph) {
            ++result.malformed;
            continue;
        }
        if (!detail::concatenative(*rec)) {
            ++result.dropped;
            continue;
        }
        result.records.push_back(std::move(*rec));
    }

    if (opts.unique_parse) {
        std::map<std::string, std::string> first_parse; // word -> parse key
        std::set<std::string> conflicted;
        for (const auto& rec : result.records) {
            auto [it, inserted] = first_parse.emplace(rec.word, detail::parse_key(rec));
            if (!inserted && it->second != detail::parse_key(rec))
                conflicted.insert(rec.word);
        }
        std::vector<MorphRecord> kept;
        std::set<std::string> emitted;
        kept.reserve(result.records.size());
        for (auto& rec : result.records) {
            if (conflicted.count(rec.word)) {
                ++result.dropped;
                continue;
            }
            if (!emitted.insert(rec.word).second) {
                ++result.dropped;
                continue;
            }
            kept.push_back(std::move(rec));
        }
        result.records = std::move(kept);
    }
    return result;
}

inline IngestResult ingest_dataset_file(const std::string& path, DatasetFormat format,
                                        const IngestOptions& opts = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset: " + path);
    return ingest_dataset(in, format, opts);
}

// Split positions between characters, strictly inside the word, in code
// points.
using BoundarySet = std::set<uint32_t>;

inline BoundarySet boundaries(const std::vector<std::string>& pieces) {
    BoundarySet out;
    size_t total = 0;
    for (const auto& p : pieces) total += utf8::length(p);
    size_t cum = 0;
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
        cum += utf8::length(pieces[i]);
        if (cum > 0 && cum < total) out.insert(static_cast<uint32_t>(cum));
    }
    return out;
}

namespace detail {

// Drops pure space tokens and strips leading space symbols from the first
// remaining piece, so boundary indices refer to the bare word.
inline std::vector<std::string> strip_for_boundaries(const std::vector<std::string>& pieces,
                                                     std::string_view sym) {
    std::vector<std::string> out;
    out.reserve(pieces.size());
    for (const auto& p : pieces)
        if (p != sym) out.push_back(p);
    if (!out.empty()) {
        std::string& first = out.front();
        size_t cut = 0;
        while (first.compare(cut, sym.size(), sym) == 0) cut += sym.size();
        if (cut > 0) first.erase(0, cut);
        if (first.empty()) out.erase(out.begin());
    }
    return out;
}

} // namespace detail

inline BoundarySet boundaries(const std::vector<std::string>& pieces,
                              std::string_view space_symbol) {
    return boundaries(detail::strip_for_boundaries(pieces, space_symbol));
}

struct BoundaryCounts {
    int64_t tp = 0;
    int64_t fp = 0;
    int64_t fn = 0;
};

inline BoundaryCounts score_record(const BoundarySet& gold, const BoundarySet& pred) {
    BoundaryCounts c;
    for (uint32_t b : pred) {
        if (gold.count(b))
            ++c.tp;
        else
            ++c.fp;
    }
    c.fn = static_cast<int64_t>(gold.size()) - c.tp;
    return c;
}

struct EvalOptions {
    bool macro = false; // average per-record metrics instead of pooling counts
    int threads = 1;
    std::string space_symbol = std::string(kSpaceSymbol);
};

// Precision/recall/F1 are percentages; a zero denominator yields 0.
struct EvalReport {
    int64_t tp = 0;
    int64_t fp = 0;
    int64_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double mean_sequence_length = 0.0;
    size_t n_records = 0;
    bool macro = false;
};

namespace detail {

inline double pct(int64_t num, int64_t den) {
    return den > 0 ? 100.0 * static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

inline double f1_of(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

} // namespace detail

using TokenizeFn = std::function<Tokenisation(const std::string&)>;

// Tokenizes each record's word in isolation and scores predicted against
// gold boundaries, pooling counts across the dataset (or averaging
// per-record metrics with opts.macro). Sequence length counts non-space
// tokens. The tokenize callable must be safe to invoke concurrently when
// opts.threads > 1.
inline EvalReport evaluate(const TokenizeFn& tokenize, const std::vector<MorphRecord>& records,
                           const EvalOptions& opts = {}) {
    if (records.empty()) throw ConfigError("cannot evaluate an empty record list");

    struct Partial {
        int64_t tp = 0, fp = 0, fn = 0;
        int64_t tokens = 0;
        double psum = 0.0, rsum = 0.0, fsum = 0.0;
    };
    const size_t block = 256;
    const size_t num_blocks = (records.size() + block - 1) / block;
    std::vector<Partial> partials(num_blocks);

    detail::for_blocks(records.size(), block, opts.threads,
                       [&](size_t b, size_t begin, size_t end) {
                           Partial& p = partials[b];
                           for (size_t i = begin; i < end; ++i) {
                               const MorphRecord& rec = records[i];
                               const Tokenisation t = tokenize(rec.word);
                               for (const auto& piece : t.pieces)
                                   if (piece != opts.space_symbol) ++p.tokens;
                               const BoundarySet gold = boundaries(rec.morphemes);
                               const BoundarySet pred =
                                   boundaries(t.pieces, opts.space_symbol);
                               const BoundaryCounts c = score_record(gold, pred);
                               p.tp += c.tp;
                               p.fp += c.fp;
                               p.fn += c.fn;
                               const double rp = detail::pct(c.tp, c.tp + c.fp);
                               const double rr = detail::pct(c.tp, c.tp + c.fn);
                               p.psum += rp;
                               p.rsum += rr;
                               p.fsum += detail::f1_of(rp, rr);
                           }
                       });

    EvalReport rep;
    rep.n_records = records.size();
    rep.macro = opts.macro;
    int64_t tokens = 0;
    double psum = 0.0, rsum = 0.0, fsum = 0.0;
    for (const Partial& p : partials) {
        rep.tp += p.tp;
        rep.fp += p.fp;
        rep.fn += p.fn;
        tokens += p.tokens;
        psum += p.psum;
        rsum += p.rsum;
        fsum += p.fsum;
    }
    rep.mean_sequence_length =
        static_cast<double>(tokens) / static_cast<double>(records.size());
    if (opts.macro) {
        rep.precision = psum / static_cast<double>(records.size());
        rep.recall = rsum / static_cast<double>(records.size());
        rep.f1 = fsum / static_cast<double>(records.size());
    } else {
        rep.precision = detail::pct(rep.tp, rep.tp + rep.fp);
        rep.recall = detail::pct(rep.tp, rep.tp + rep.fn);
        rep.f1 = detail::f1_of(rep.precision, rep.recall);
    }
    return rep;
}

enum class AffixSubset { PrefixOnly, SuffixOnly };

inline AffixSubset affix_subset_from_string(std::string_view s) {
    if (s == "prefix") return AffixSubset::PrefixOnly;
    if (s == "suffix") return AffixSubset::SuffixOnly;
    throw FormatError("unknown subset: " + std::string(s) + " (expected prefix or suffix)");
}

// Keeps records with at least one affix of the requested kind and none of
// the other kind. Role annotations from the dataset are used when present;
// otherwise morphemes are classified against the lexicon, where a prefix
// cannot be the last morpheme and a suffix cannot be the first.
inline std::vector<MorphRecord> filter_affix_subset(const std::vector<MorphRecord>& records,
                                                    const AffixLexicon& lexicon,
                                                    AffixSubset which) {
    std::vector<MorphRecord> out;
    for (const auto& rec : records) {
        size_t prefixes = 0, suffixes = 0;
        if (rec.roles.size() == rec.morphemes.size() && !rec.roles.empty()) {
            for (MorphRole r : rec.roles) {
                if (r == MorphRole::Prefix) ++prefixes;
                if (r == MorphRole::Suffix) ++suffixes;
            }
        } else {
            for (size_t i = 0; i < rec.morphemes.size(); ++i) {
                const std::string& m = rec.morphemes[i];
                if (i + 1 < rec.morphemes.size() && lexicon.prefixes.count(m)) ++prefixes;
                if (i > 0 && lexicon.suffixes.count(m)) ++suffixes;
            }
        }
        const bool keep = which == AffixSubset::PrefixOnly
                              ? (prefixes > 0 && suffixes == 0)
                              : (suffixes > 0 && prefixes == 0);
        if (keep) out.push_back(rec);
    }
    return out;
}

} // namespace spacetok

#pragma once

// Brute-force reference implementations used only by tests. Everything here
// recomputes from first principles over flat state, deliberately sharing no
// logic with the library code it cross-checks.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spacetok/bpe.hpp"
#include "spacetok/textnorm.hpp"
#include "spacetok/types.hpp"
#include "spacetok/utf8.hpp"

namespace oracle {

inline std::vector<std::string> chars_of(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos < s.size()) {
        const size_t start = pos;
        spacetok::utf8::decode_at(s, pos);
        out.push_back(s.substr(start, pos - start));
    }
    return out;
}

inline size_t count_occurrences(const std::string& token, const std::string& sym) {
    size_t n = 0;
    for (size_t p = token.find(sym); p != std::string::npos; p = token.find(sym, p + 1)) ++n;
    return n;
}

inline bool pair_allowed(const std::string& left, const std::string& right,
                         spacetok::SpaceMode mode, const std::string& sym) {
    if (mode == spacetok::SpaceMode::Attached) {
        if (count_occurrences(right, sym) != 0) return false;
        const size_t n = count_occurrences(left, sym);
        if (n == 0) return true;
        return n == 1 && left.compare(0, sym.size(), sym) == 0;
    }
    return count_occurrences(left, sym) == 0 && count_occurrences(right, sym) == 0;
}

struct FlatBpe {
    std::vector<std::string> alphabet;
    std::vector<spacetok::MergeRule> merges;
};

// Reference BPE trainer: one token sequence per pretoken occurrence, full
// recount of all eligible pairs every round, selection by max count with
// ties to the smaller concatenation and then the smaller left side,
// greedy left-to-right rewrite. Stops at the merge budget or when no
// eligible pair occurs twice.
inline FlatBpe train_bpe_flat(const spacetok::Corpus& corpus, size_t target_size,
                              const std::string& sym = std::string(spacetok::kSpaceSymbol)) {
    const spacetok::SpaceMode mode = corpus.space_mode;
    std::set<std::string> alphabet;
    std::vector<std::vector<std::string>> state;
    for (const auto& sentence : corpus.sentences) {
        for (const auto& pretoken : sentence) {
            std::vector<std::string> cs = chars_of(pretoken);
            alphabet.insert(cs.begin(), cs.end());
            state.push_back(std::move(cs));
        }
    }

    FlatBpe out;
    out.alphabet.assign(alphabet.begin(), alphabet.end());
    const size_t minimum = spacetok::kNumSpecials + out.alphabet.size();
    size_t budget = target_size > minimum ? target_size - minimum : 0;

    while (budget > 0) {
        std::map<std::pair<std::string, std::string>, long long> counts;
        for (const auto& w : state)
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (pair_allowed(w[i], w[i + 1], mode, sym)) ++counts[{w[i], w[i + 1]}];

        bool found = false;
        std::pair<std::string, std::string> best;
        long long best_count = 0;
        for (const auto& [pair, count] : counts) {
            if (count < 2) continue;
            if (!found) {
                best = pair;
                best_count = count;
                found = true;
                continue;
            }
            const std::string cat = pair.first + pair.second;
            const std::string best_cat = best.first + best.second;
            if (count > best_count ||
                (count == best_count &&
                 (cat < best_cat || (cat == best_cat && pair.first < best.first)))) {
                best = pair;
                best_count = count;
            }
        }
        if (!found) break;

        out.merges.push_back({best.first, best.second, static_cast<int>(out.merges.size())});
        const std::string merged = best.first + best.second;
        for (auto& w : state) {
            std::vector<std::string> next;
            next.reserve(w.size());
            size_t i = 0;
            while (i < w.size()) {
                if (i + 1 < w.size() && w[i] == best.first && w[i + 1] == best.second) {
                    next.push_back(merged);
                    i += 2;
                } else {
                    next.push_back(w[i]);
                    ++i;
                }
            }
            w = std::move(next);
        }
        --budget;
    }
    return out;
}

struct Segmentation {
    std::vector<std::string> pieces;
    double score = 0.0;
};

// Exhaustive best-segmentation search over all 2^(n-1) splits of a word.
// Scores are accumulated right to left (matching a right-to-left dynamic
// program exactly), and ties prefer fewer pieces, then the lexicographically
// greatest piece-length sequence (leftmost-longest). Returns nothing when no
// split is covered by the piece table.
inline std::optional<Segmentation> best_segmentation(
    const std::string& word, const std::map<std::string, double>& pieces) {
    const std::vector<std::string> cs = chars_of(word);
    const size_t n = cs.size();
    if (n == 0 || n > 20) return std::nullopt;

    std::optional<Segmentation> best;
    std::vector<size_t> best_lens;
    const uint64_t limit = n > 1 ? (uint64_t{1} << (n - 1)) : 1;
    for (uint64_t mask = 0; mask < limit; ++mask) {
        std::vector<std::string> segs;
        std::vector<size_t> lens;
        std::string cur;
        size_t cur_len = 0;
        bool covered = true;
        for (size_t i = 0; i < n; ++i) {
            cur += cs[i];
            ++cur_len;
            const bool boundary = i + 1 == n || (mask >> i) & 1;
            if (boundary) {
                if (!pieces.count(cur)) {
                    covered = false;
                    break;
                }
                segs.push_back(cur);
                lens.push_back(cur_len);
                cur.clear();
                cur_len = 0;
            }
        }
        if (!covered) continue;

        double score = 0.0;
        for (size_t k = segs.size(); k-- > 0;) score = pieces.at(segs[k]) + score;

        bool better = false;
        if (!best) {
            better = true;
        } else if (score != best->score) {
            better = score > best->score;
        } else if (segs.size() != best->pieces.size()) {
            better = segs.size() < best->pieces.size();
        } else {
            better = lens > best_lens;
        }
        if (better) {
            best = Segmentation{segs, score};
            best_lens = lens;
        }
    }
    return best;
}

// Generators shared by the randomized suites. Log-probabilities are dyadic
// rationals (multiples of 1/8) so that sums compare exactly in doubles.

inline std::string random_word(std::mt19937_64& rng, size_t max_len, int alphabet_size) {
    std::uniform_int_distribution<size_t> len(1, max_len);
    std::uniform_int_distribution<int> ch(0, alphabet_size - 1);
    std::string w;
    const size_t n = len(rng);
    for (size_t i = 0; i < n; ++i) w.push_back(static_cast<char>('a' + ch(rng)));
    return w;
}

inline double dyadic_logp(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> eighths(1, 96);
    return -static_cast<double>(eighths(rng)) / 8.0;
}

} // namespace oracle

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spacetok/detail/parallel.hpp"
#include "spacetok/error.hpp"
#include "spacetok/textnorm.hpp"
#include "spacetok/types.hpp"
#include "spacetok/utf8.hpp"

namespace spacetok {

// One learned merge instruction. Ranks are unique and contiguous from 0;
// rank order is learning order.
struct MergeRule {
    std::string left;
    std::string right;
    int rank = 0;

    bool operator==(const MergeRule&) const = default;
};

struct TrainOptions {
    int threads = 1;
};

namespace detail {

struct PairHash {
    size_t operator()(const std::pair<std::string, std::string>& p) const {
        const std::hash<std::string_view> h;
        const size_t a = h(p.first);
        const size_t b = h(p.second);
        return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    }
};

} // namespace detail

struct BpeModel {
    std::vector<std::string> alphabet; // single-character tokens, code-point order
    std::vector<MergeRule> merges;
    SpaceMode space_mode = SpaceMode::Isolated;
    NormConfig norm;
    size_t target_size = 0;
    // token -> ID; specials first, then alphabet, then merge products in
    // rank order (duplicate products keep their first ID).
    std::unordered_map<std::string, int> id_map;
    // (left, right) -> rank lookup for inference; not serialized.
    std::unordered_map<std::pair<std::string, std::string>, int, detail::PairHash>
        merge_ranks;

    size_t vocab_size() const { return id_map.size(); }
    int token_id(const std::string& token) const {
        auto it = id_map.find(token);
        return it == id_map.end() ? kUnkId : it->second;
    }
    // Rebuilds id_map and merge_ranks from alphabet + merges. Call after
    // constructing a model by hand.
    void rebuild_indexes();
};

namespace detail {

inline bool contains_symbol(std::string_view token, std::string_view sym) {
    return token.find(sym) != std::string_view::npos;
}

// True when the symbol occurs only as the leading character (or not at all).
inline bool symbol_only_leading(std::string_view token, std::string_view sym) {
    const size_t first = token.find(sym);
    if (first == std::string_view::npos) return true;
    if (first != 0) return false;
    return token.find(sym, sym.size()) == std::string_view::npos;
}

inline std::unordered_map<std::string, int> build_id_map(
    const std::vector<std::string>& alphabet, const std::vector<MergeRule>& merges) {
    std::unordered_map<std::string, int> ids;
    ids.reserve(kNumSpecials + alphabet.size() + merges.size());
    int next = 0;
    for (const auto& s : kSpecialTokens) ids.emplace(std::string(s), next++);
    for (const auto& c : alphabet)
        if (ids.emplace(c, next).second) ++next;
    for (const auto& m : merges)
        if (ids.emplace(m.left + m.right, next).second) ++next;
    return ids;
}

} // namespace detail

inline void BpeModel::rebuild_indexes() {
    id_map = detail::build_id_map(alphabet, merges);
    merge_ranks.clear();
    merge_ranks.reserve(merges.size());
    for (const auto& m : merges) merge_ranks.emplace(std::pair{m.left, m.right}, m.rank);
}

// Whether a (left, right) token pair may be merged under the given mode.
// Isolated: neither side contains the space symbol. Attached: the space
// symbol may appear only as the first character of left and never in right.
inline bool pair_eligible(std::string_view left, std::string_view right, SpaceMode mode,
                          std::string_view space_symbol = kSpaceSymbol) {
    if (mode == SpaceMode::Attached)
        return !detail::contains_symbol(right, space_symbol) &&
               detail::symbol_only_leading(left, space_symbol);
    return !detail::contains_symbol(left, space_symbol) &&
           !detail::contains_symbol(right, space_symbol);
}

// Counts every adjacent, mode-eligible token bigram in per-sentence token
// sequences. Eligibility alone keeps pairs from crossing pretoken
// boundaries: any pair spanning two pretokens has a space symbol on the
// wrong side in both modes.
inline std::map<std::pair<std::string, std::string>, int64_t> count_pairs(
    const std::vector<std::vector<std::string>>& corpus_state, SpaceMode mode,
    std::string_view space_symbol = kSpaceSymbol) {
    std::map<std::pair<std::string, std::string>, int64_t> counts;
    for (const auto& sentence : corpus_state) {
        for (size_t i = 0; i + 1 < sentence.size(); ++i) {
            if (!pair_eligible(sentence[i], sentence[i + 1], mode, space_symbol))
                continue;
            ++counts[{sentence[i], sentence[i + 1]}];
        }
    }
    return counts;
}

namespace detail {

// Shared merge-list trainer. BPE and WordPiece differ only in how the next
// pair is selected, expressed here as a scoring policy over pair counts.
// The policy must define a strict ordering; ties on the policy score fall
// back to the smaller concatenated string, then the smaller left string,
// so training is deterministic and implementation-independent.
class MergeTrainer {
public:
    MergeTrainer(const Corpus& corpus, SpaceMode mode, const NormConfig& norm,
                 int threads)
        : mode_(mode), space_symbol_(norm.space_symbol), threads_(threads) {
        if (corpus.space_mode != mode)
            throw ConfigError("corpus was normalized in a different space mode");
        build_words(corpus);
        count_initial_pairs();
    }

    const std::vector<std::string>& alphabet() const { return alphabet_; }

    size_t unique_token_strings() const { return produced_.size() + alphabet_.size(); }

    // Runs the merge loop with the given pair-selection policy until the
    // vocabulary (specials + alphabet + unique merge products) reaches
    // target_size or no eligible pair occurs at least twice.
    template <typename ScoreBetter>
    std::vector<MergeRule> run(size_t target_size, ScoreBetter&& better) {
        std::vector<MergeRule> merges;
        while (kNumSpecials + alphabet_.size() + produced_.size() < target_size) {
            const int64_t best = select_pair(better);
            if (best < 0) break;
            const int32_t l = static_cast<int32_t>(best >> 32);
            const int32_t r = static_cast<int32_t>(best & 0xFFFFFFFF);
            merges.push_back({token_text_[l], token_text_[r],
                              static_cast<int>(merges.size())});
            apply_merge(l, r);
        }
        return merges;
    }

    int64_t token_count(int32_t tok) const { return token_counts_[tok]; }
    const std::string& token_text(int32_t tok) const { return token_text_[tok]; }

private:
    static uint64_t key_of(int32_t l, int32_t r) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(l)) << 32) |
               static_cast<uint32_t>(r);
    }

    struct Word {
        std::vector<int32_t> toks;
        int64_t freq = 0;
    };

    struct PairEntry {
        int64_t count = 0;
        std::vector<uint32_t> words; // may contain duplicates and stale entries
    };

    int32_t intern(const std::string& text) {
        auto it = token_ids_.find(text);
        if (it != token_ids_.end()) return it->second;
        const int32_t id = static_cast<int32_t>(token_text_.size());
        token_ids_.emplace(text, id);
        token_text_.push_back(text);
        token_counts_.push_back(0);
        eligible_left_.push_back(detail::symbol_only_leading(text, space_symbol_) &&
                                 (mode_ == SpaceMode::Attached ||
                                  !detail::contains_symbol(text, space_symbol_)));
        eligible_right_.push_back(!detail::contains_symbol(text, space_symbol_));
        return id;
    }

    bool eligible(int32_t l, int32_t r) const {
        return eligible_left_[l] && eligible_right_[r];
    }

    void build_words(const Corpus& corpus) {
        std::unordered_map<std::string, int64_t> freq;
        for (const auto& sentence : corpus.sentences)
            for (const auto& pretoken : sentence) ++freq[pretoken];

        std::vector<std::pair<std::string, int64_t>> sorted(freq.begin(), freq.end());
        std::sort(sorted.begin(), sorted.end());

        words_.reserve(sorted.size());
        std::unordered_set<std::string> seen_chars;
        for (auto& [pretoken, count] : sorted) {
            Word w;
            w.freq = count;
            size_t pos = 0;
            while (pos < pretoken.size()) {
                const size_t start = pos;
                utf8::decode_at(pretoken, pos);
                const std::string ch = pretoken.substr(start, pos - start);
                if (seen_chars.insert(ch).second) alphabet_.push_back(ch);
                const int32_t id = intern(ch);
                w.toks.push_back(id);
                token_counts_[id] += count;
            }
            words_.push_back(std::move(w));
        }
        std::sort(alphabet_.begin(), alphabet_.end());
    }

    void count_initial_pairs() {
        const size_t block = 4096;
        const size_t num_blocks = words_.empty() ? 0 : (words_.size() + block - 1) / block;
        std::vector<std::unordered_map<uint64_t, PairEntry>> partial(num_blocks);
        detail::for_blocks(words_.size(), block, threads_,
                           [&](size_t b, size_t begin, size_t end) {
                               auto& map = partial[b];
                               for (size_t wi = begin; wi < end; ++wi) {
                                   const Word& w = words_[wi];
                                   for (size_t i = 0; i + 1 < w.toks.size(); ++i) {
                                       if (!eligible(w.toks[i], w.toks[i + 1])) continue;
                                       auto& e = map[key_of(w.toks[i], w.toks[i + 1])];
                                       e.count += w.freq;
                                       e.words.push_back(static_cast<uint32_t>(wi));
                                   }
                               }
                           });
        for (auto& map : partial) {
            for (auto& [key, entry] : map) {
                auto& dst = pairs_[key];
                dst.count += entry.count;
                dst.words.insert(dst.words.end(), entry.words.begin(),
                                 entry.words.end());
            }
        }
    }

    // Picks the best pair with count >= 2, or -1. `better(a, b)` returns
    // true when candidate a scores strictly higher than b; equal scores
    // fall back to the concatenation/left tie rule.
    template <typename ScoreBetter>
    int64_t select_pair(ScoreBetter&& better) const {
        bool found = false;
        uint64_t best_key = 0;
        int64_t best_count = 0;
        std::string best_concat, best_left;
        for (const auto& [key, entry] : pairs_) {
            if (entry.count < 2) continue;
            const int32_t l = static_cast<int32_t>(key >> 32);
            const int32_t r = static_cast<int32_t>(key & 0xFFFFFFFF);
            if (found) {
                if (better(key, entry.count, best_key, best_count)) {
                    // strictly better score
                } else if (better(best_key, best_count, key, entry.count)) {
                    continue;
                } else {
                    const std::string concat = token_text_[l] + token_text_[r];
                    if (concat > best_concat) continue;
                    if (concat == best_concat && token_text_[l] >= best_left) continue;
                }
            }
            found = true;
            best_key = key;
            best_count = entry.count;
            best_concat = token_text_[l] + token_text_[r];
            best_left = token_text_[l];
        }
        return found ? static_cast<int64_t>(best_key) : -1;
    }

    // Merges every adjacent (l, r) occurrence, left to right, in every word
    // registered for the pair. Counts are kept exact by subtracting each
    // affected word's old pairs and re-adding its new ones.
    void apply_merge(int32_t l, int32_t r) {
        const std::string product = token_text_[l] + token_text_[r];
        const int32_t t = intern(product);
        produced_.insert(product);

        auto it = pairs_.find(key_of(l, r));
        if (it == pairs_.end()) return;
        std::vector<uint32_t> affected = std::move(it->second.words);
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

        for (uint32_t wi : affected) {
            Word& w = words_[wi];
            bool has = false;
            for (size_t i = 0; i + 1 < w.toks.size(); ++i)
                if (w.toks[i] == l && w.toks[i + 1] == r) {
                    has = true;
                    break;
                }
            if (!has) continue;

            add_word_pairs(w, wi, -1);
            std::vector<int32_t> merged;
            merged.reserve(w.toks.size());
            size_t i = 0;
            while (i < w.toks.size()) {
                if (i + 1 < w.toks.size() && w.toks[i] == l && w.toks[i + 1] == r) {
                    merged.push_back(t);
                    token_counts_[l] -= w.freq;
                    token_counts_[r] -= w.freq;
                    token_counts_[t] += w.freq;
                    i += 2;
                } else {
                    merged.push_back(w.toks[i]);
                    ++i;
                }
            }
            w.toks = std::move(merged);
            add_word_pairs(w, wi, +1);
        }
        pairs_.erase(key_of(l, r));
    }

    void add_word_pairs(const Word& w, uint32_t wi, int sign) {
        for (size_t i = 0; i + 1 < w.toks.size(); ++i) {
            if (!eligible(w.toks[i], w.toks[i + 1])) continue;
            auto& e = pairs_[key_of(w.toks[i], w.toks[i + 1])];
            e.count += sign * w.freq;
            if (sign > 0) e.words.push_back(wi);
        }
    }

    SpaceMode mode_;
    std::string space_symbol_;
    int threads_;
    std::vector<std::string> alphabet_;
    std::vector<Word> words_;
    std::vector<std::string> token_text_;
    std::unordered_map<std::string, int32_t> token_ids_;
    std::vector<int64_t> token_counts_;
    std::vector<char> eligible_left_;
    std::vector<char> eligible_right_;
    std::unordered_map<uint64_t, PairEntry> pairs_;
    std::unordered_set<std::string> produced_;
};

} // namespace detail

// Learns a BPE merge list: repeatedly merges the most frequent eligible
// pair (ties broken by smaller concatenation, then smaller left side)
// until the vocabulary reaches target_size or no pair occurs twice.
inline BpeModel train_bpe(const Corpus& corpus, size_t target_size, SpaceMode mode,
                          const NormConfig& norm = {}, const TrainOptions& opts = {}) {
    detail::MergeTrainer trainer(corpus, mode, norm, opts.threads);
    if (target_size < kNumSpecials + trainer.alphabet().size())
        throw ConfigError("vocab size " + std::to_string(target_size) +
                          " is below alphabet size plus specials (" +
                          std::to_string(kNumSpecials + trainer.alphabet().size()) + ")");

    BpeModel model;
    model.space_mode = mode;
    model.norm = norm;
    model.target_size = target_size;
    model.merges = trainer.run(
        target_size, [](uint64_t, int64_t count_a, uint64_t, int64_t count_b) {
            return count_a > count_b;
        });
    model.alphabet = trainer.alphabet();
    model.rebuild_indexes();
    return model;
}

namespace detail {

// Applies merge rules to one pretoken's character sequence, replaying
// ranks in increasing order: each rule gets one exhaustive left-to-right
// pass, and pairs formed behind the rank cursor are not revisited.
inline void apply_merges_in_order(
    std::vector<std::string>& toks,
    const std::unordered_map<std::pair<std::string, std::string>, int, PairHash>& ranks) {
    int cursor = -1;
    while (toks.size() > 1) {
        int next = -1;
        for (size_t i = 0; i + 1 < toks.size(); ++i) {
            auto it = ranks.find({toks[i], toks[i + 1]});
            if (it == ranks.end() || it->second <= cursor) continue;
            if (next < 0 || it->second < next) next = it->second;
        }
        if (next < 0) break;
        std::vector<std::string> merged;
        merged.reserve(toks.size());
        size_t i = 0;
        while (i < toks.size()) {
            if (i + 1 < toks.size()) {
                auto it = ranks.find({toks[i], toks[i + 1]});
                if (it != ranks.end() && it->second == next) {
                    merged.push_back(toks[i] + toks[i + 1]);
                    i += 2;
                    continue;
                }
            }
            merged.push_back(std::move(toks[i]));
            ++i;
        }
        toks = std::move(merged);
        cursor = next;
    }
}

inline std::vector<std::string> split_code_points(std::string_view pretoken) {
    std::vector<std::string> toks;
    size_t pos = 0;
    while (pos < pretoken.size()) {
        const size_t start = pos;
        utf8::decode_at(pretoken, pos);
        toks.emplace_back(pretoken.substr(start, pos - start));
    }
    return toks;
}

} // namespace detail

// Tokenizes one line: normalizes it with the model's config, starts each
// pretoken at character level and applies the merge list in rank order.
// Unknown characters keep their surface form under the [UNK] ID.
inline Tokenisation tokenize_bpe(const BpeModel& model, std::string_view line) {
    const SpaceMode split_mode =
        model.space_mode == SpaceMode::Attached ? SpaceMode::Attached : SpaceMode::Isolated;
    Tokenisation out;
    for (const std::string& pretoken : normalize_line(line, split_mode, model.norm)) {
        std::vector<std::string> toks = detail::split_code_points(pretoken);
        detail::apply_merges_in_order(toks, model.merge_ranks);
        for (auto& t : toks) {
            const int id = model.token_id(t);
            out.push_back(std::move(t), id);
        }
    }
    if (model.space_mode == SpaceMode::IsolatedNoSpaces)
        return strip_spaces(out, model.norm.space_symbol);
    return out;
}

} // namespace spacetok

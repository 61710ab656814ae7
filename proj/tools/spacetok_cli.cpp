// spacetok command line tool: train/tokenize/evaluate/analyze/segment-demo.
// Exit codes: 0 success, 2 configuration, 3 format, 4 I/O, 5 coverage,
// 6 text normalization/decoding, 1 anything else.

#include "CLI11.hpp"
#include "json.hpp"

#include "spacetok/model_io.hpp"
#include "spacetok/morphoeval.hpp"
#include "spacetok/textnorm.hpp"
#include "spacetok/tokenizer.hpp"
#include "spacetok/vocabstats.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using namespace spacetok;

double round1(double v) { return std::round(v * 10.0) / 10.0; }
double round2(double v) { return std::round(v * 100.0) / 100.0; }

// Relative paths that don't resolve from the working directory are retried
// under $SPACETOK_DATA_DIR.
std::string resolve_data_path(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    if (std::ifstream(path).good()) return path;
    const char* dir = std::getenv("SPACETOK_DATA_DIR");
    if (dir && *dir) {
        std::string joined = std::string(dir) + "/" + path;
        if (std::ifstream(joined).good()) return joined;
    }
    return path;
}

std::vector<std::string> read_lines(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        std::string line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = nl + 1;
    }
    return lines;
}

void write_report(const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open report file for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing report file: " + path);
}

struct TrainArgs {
    std::string input;
    std::string output;
    std::string config;
    std::string report;
    std::string algorithm = "bpe";
    std::string mode = "attached";
    std::string space_symbol = std::string(kSpaceSymbol);
    size_t vocab_size = 16000;
    bool nfkc = false;
    bool no_collapse = false;
    int threads = 1;
    size_t seed_size = 1000000;
    size_t max_piece_length = 16;
    int em_iterations = 2;
    double shrink_factor = 0.75;
    size_t max_word_length = 100;
};

struct TrainOptionPtrs {
    CLI::Option* input = nullptr;
    CLI::Option* output = nullptr;
    CLI::Option* report = nullptr;
    CLI::Option* algorithm = nullptr;
    CLI::Option* mode = nullptr;
    CLI::Option* space_symbol = nullptr;
    CLI::Option* vocab_size = nullptr;
    CLI::Option* nfkc = nullptr;
    CLI::Option* no_collapse = nullptr;
    CLI::Option* threads = nullptr;
    CLI::Option* seed_size = nullptr;
    CLI::Option* max_piece_length = nullptr;
    CLI::Option* em_iterations = nullptr;
    CLI::Option* shrink_factor = nullptr;
    CLI::Option* max_word_length = nullptr;
};

// Config file values fill in whatever the command line didn't set.
void apply_config_file(TrainArgs& a, const TrainOptionPtrs& opt) {
    if (a.config.empty()) return;
    json j;
    try {
        j = json::parse(read_file(resolve_data_path(a.config)));
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + a.config + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    const auto unset = [](CLI::Option* o) { return o == nullptr || o->count() == 0; };
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "input") {
                if (unset(opt.input)) a.input = value.get<std::string>();
            } else if (key == "output") {
                if (unset(opt.output)) a.output = value.get<std::string>();
            } else if (key == "report") {
                if (unset(opt.report)) a.report = value.get<std::string>();
            } else if (key == "algorithm") {
                if (unset(opt.algorithm)) a.algorithm = value.get<std::string>();
            } else if (key == "mode") {
                if (unset(opt.mode)) a.mode = value.get<std::string>();
            } else if (key == "space_symbol") {
                if (unset(opt.space_symbol)) a.space_symbol = value.get<std::string>();
            } else if (key == "vocab_size") {
                if (unset(opt.vocab_size)) a.vocab_size = value.get<size_t>();
            } else if (key == "nfkc") {
                if (unset(opt.nfkc)) a.nfkc = value.get<bool>();
            } else if (key == "collapse_whitespace") {
                if (unset(opt.no_collapse)) a.no_collapse = !value.get<bool>();
            } else if (key == "threads") {
                if (unset(opt.threads)) a.threads = value.get<int>();
            } else if (key == "seed_size") {
                if (unset(opt.seed_size)) a.seed_size = value.get<size_t>();
            } else if (key == "max_piece_length") {
                if (unset(opt.max_piece_length)) a.max_piece_length = value.get<size_t>();
            } else if (key == "em_iterations") {
                if (unset(opt.em_iterations)) a.em_iterations = value.get<int>();
            } else if (key == "shrink_factor") {
                if (unset(opt.shrink_factor)) a.shrink_factor = value.get<double>();
            } else if (key == "max_word_length") {
                if (unset(opt.max_word_length)) a.max_word_length = value.get<size_t>();
            } else {
                throw ConfigError("config file: unknown key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
}

int run_train(TrainArgs& a, const TrainOptionPtrs& opt) {
    apply_config_file(a, opt);
    if (a.input.empty()) throw ConfigError("train needs an input corpus (--input)");
    if (a.output.empty()) throw ConfigError("train needs an output path (--output)");
    if (a.mode != "attached" && a.mode != "isolated")
        throw ConfigError("train mode must be attached or isolated");
    if (a.threads < 1) throw ConfigError("threads must be at least 1");

    NormConfig norm;
    norm.space_symbol = a.space_symbol;
    norm.unicode_normalization = a.nfkc ? UnicodeNorm::Nfkc : UnicodeNorm::None;
    norm.collapse_repeated_whitespace = !a.no_collapse;
    const SpaceMode mode = space_mode_from_string(a.mode);
    const Algorithm algo = algorithm_from_string(a.algorithm);

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::string> lines = read_lines(resolve_data_path(a.input));
    const Corpus corpus = normalize_corpus(lines, mode, norm);
    size_t pretokens = 0;
    for (const auto& s : corpus.sentences) pretokens += s.size();

    AnyModel model;
    if (algo == Algorithm::Bpe) {
        model = train_bpe(corpus, a.vocab_size, mode, norm, TrainOptions{a.threads});
    } else if (algo == Algorithm::WordPiece) {
        WordPieceModel wp =
            train_wordpiece(corpus, a.vocab_size, mode, norm, TrainOptions{a.threads});
        wp.max_input_word_length = a.max_word_length;
        model = std::move(wp);
    } else {
        UnigramTrainConfig cfg;
        cfg.target_size = a.vocab_size;
        cfg.seed_size = a.seed_size;
        cfg.max_piece_length = a.max_piece_length;
        cfg.em_iterations_per_round = a.em_iterations;
        cfg.shrink_factor = a.shrink_factor;
        cfg.threads = a.threads;
        model = train_unigram(corpus, cfg, mode, norm);
    }
    save_model(model, a.output);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json report = {
        {"command", "train"},
        {"algorithm", to_string(algo)},
        {"mode", to_string(mode)},
        {"target_size", a.vocab_size},
        {"vocab_size", vocab_size_of(model)},
        {"corpus_sentences", corpus.sentences.size()},
        {"corpus_pretokens", pretokens},
        {"model", a.output},
    };
    write_report(a.report, report);
    std::cout << "trained " << to_string(algo) << " (" << to_string(mode) << ") vocab "
              << vocab_size_of(model) << "/" << a.vocab_size << " on "
              << corpus.sentences.size() << " sentences (" << pretokens
              << " pretokens) -> " << a.output << "\n";
    // Runtime is reported out-of-band so output files stay deterministic.
    std::cerr << "train runtime: " << round2(seconds) << "s\n";
    return 0;
}

struct TokenizeArgs {
    std::string model;
    std::string input;
    std::string output;
    bool ids = false;
    bool no_spaces = false;
};

int run_tokenize(const TokenizeArgs& a) {
    const AnyModel model = load_model(resolve_data_path(a.model));
    if (a.no_spaces && space_mode_of(model) == SpaceMode::Attached)
        throw ConfigError("--no-spaces needs an isolated-mode model");
    const std::string& sym = norm_of(model).space_symbol;

    std::ifstream file_in;
    std::istream* in = &std::cin;
    if (!a.input.empty()) {
        file_in.open(resolve_data_path(a.input), std::ios::binary);
        if (!file_in) throw IoError("cannot open input: " + a.input);
        in = &file_in;
    }
    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (!a.output.empty()) {
        file_out.open(a.output, std::ios::binary | std::ios::trunc);
        if (!file_out) throw IoError("cannot open output: " + a.output);
        out = &file_out;
    }

    std::string line;
    while (std::getline(*in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        Tokenisation t = tokenize(model, line);
        if (a.no_spaces) t = strip_spaces(t, sym);
        if (a.ids) {
            for (size_t i = 0; i < t.size(); ++i) {
                if (i) *out << ',';
                *out << t.ids[i];
            }
        } else {
            for (size_t i = 0; i < t.size(); ++i) {
                if (i) *out << ' ';
                *out << t.pieces[i];
            }
        }
        *out << '\n';
    }
    out->flush();
    if (!*out) throw IoError("failed writing tokenize output");
    return 0;
}

struct EvaluateArgs {
    std::string model;
    std::string dataset;
    std::string format;
    std::string subset;
    std::string lexicon;
    std::string report;
    bool skip_header = false;
    bool keep_duplicates = false;
    bool macro = false;
    int threads = 1;
};

int run_evaluate(const EvaluateArgs& a) {
    const AnyModel model = load_model(resolve_data_path(a.model));
    const DatasetFormat format = dataset_format_from_string(a.format);
    IngestOptions iopts;
    iopts.skip_header = a.skip_header;
    iopts.unique_parse = !a.keep_duplicates;
    const IngestResult ingest =
        ingest_dataset_file(resolve_data_path(a.dataset), format, iopts);

    std::vector<MorphRecord> records = ingest.records;
    if (!a.subset.empty()) {
        AffixLexicon lexicon;
        if (!a.lexicon.empty()) lexicon = AffixLexicon::load(resolve_data_path(a.lexicon));
        records = filter_affix_subset(records, lexicon, affix_subset_from_string(a.subset));
    }

    EvalOptions eopts;
    eopts.macro = a.macro;
    eopts.threads = a.threads;
    eopts.space_symbol = norm_of(model).space_symbol;
    const EvalReport rep =
        evaluate([&](const std::string& w) { return tokenize(model, w); }, records, eopts);

    json report = {
        {"command", "evaluate"},
        {"model", a.model},
        {"dataset", a.dataset},
        {"format", to_string(format)},
        {"records", rep.n_records},
        {"ingested", ingest.records.size()},
        {"dropped", ingest.dropped},
        {"malformed", ingest.malformed},
        {"aggregation", rep.macro ? "macro" : "micro"},
        {"tp", rep.tp},
        {"fp", rep.fp},
        {"fn", rep.fn},
        {"precision", round1(rep.precision)},
        {"recall", round1(rep.recall)},
        {"f1", round1(rep.f1)},
        {"mean_sequence_length", round2(rep.mean_sequence_length)},
    };
    if (!a.subset.empty()) report["subset"] = a.subset;
    write_report(a.report, report);

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "n=%zu  seq_len=%.2f  precision=%.1f  recall=%.1f  f1=%.1f",
                  rep.n_records, rep.mean_sequence_length, rep.precision, rep.recall,
                  rep.f1);
    std::cout << buf << "\n";
    if (ingest.dropped || ingest.malformed)
        std::cerr << "dataset: kept " << ingest.records.size() << ", dropped "
                  << ingest.dropped << ", malformed " << ingest.malformed << "\n";
    return 0;
}

struct AnalyzeArgs {
    std::vector<std::string> models;
    std::string lexicon;
    std::string report;
};

int run_analyze(const AnalyzeArgs& a) {
    AffixLexicon lexicon;
    bool have_lexicon = false;
    if (!a.lexicon.empty()) {
        lexicon = AffixLexicon::load(resolve_data_path(a.lexicon));
        have_lexicon = true;
    } else {
        std::cerr << "warning: no affix lexicon given; affix counts omitted\n";
    }

    json report = {{"command", "analyze"}, {"models", json::array()}};
    std::vector<AnyModel> models;
    std::vector<std::vector<std::string>> vocabs;
    for (const auto& path : a.models) {
        models.push_back(load_model(resolve_data_path(path)));
        vocabs.push_back(vocabulary(models.back()));
        const AnyModel& m = models.back();
        const DegeneracyResult deg = degeneracy(vocabs.back(), norm_of(m).space_symbol);

        json entry = {
            {"path", path},
            {"algorithm", to_string(algorithm_of(m))},
            {"mode", to_string(space_mode_of(m))},
            {"vocab_size", vocab_size_of(m)},
            {"degeneracy_pct", round1(100.0 * deg.ratio)},
            {"degenerate_tokens", deg.duplicates.size()},
        };
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%s: %s %s vocab=%zu degeneracy=%.1f%% (%zu tokens)",
                      path.c_str(), to_string(algorithm_of(m)).c_str(),
                      to_string(space_mode_of(m)).c_str(), vocab_size_of(m),
                      100.0 * deg.ratio, deg.duplicates.size());
        std::cout << buf << "\n";
        if (have_lexicon) {
            const AffixCounts ac =
                affix_counts(vocabs.back(), lexicon, norm_of(m).space_symbol);
            entry["prefixes"] = ac.prefixes;
            entry["suffixes"] = ac.suffixes;
            std::cout << "  prefixes=" << ac.prefixes << " suffixes=" << ac.suffixes
                      << "\n";
        }
        report["models"].push_back(std::move(entry));
    }

    if (a.models.size() == 2) {
        const SpaceMode m0 = space_mode_of(models[0]);
        const SpaceMode m1 = space_mode_of(models[1]);
        const bool pair = (m0 == SpaceMode::Attached) != (m1 == SpaceMode::Attached);
        if (pair) {
            const size_t def = m0 == SpaceMode::Attached ? 0 : 1;
            const size_t mod = 1 - def;
            const OverlapResult ov = overlap(vocabs[def], vocabs[mod],
                                             norm_of(models[def]).space_symbol);
            report["overlap"] = {
                {"default", a.models[def]},
                {"modified", a.models[mod]},
                {"transferred_pct", round1(100.0 * ov.transferred)},
                {"converse_pct", round1(100.0 * ov.converse)},
                {"intersection", ov.intersection},
                {"stripped_default_size", ov.stripped_default_size},
                {"modified_size", ov.modified_size},
            };
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "overlap default->modified: %.1f%% (converse %.1f%%)",
                          100.0 * ov.transferred, 100.0 * ov.converse);
            std::cout << buf << "\n";
        } else {
            std::cerr << "warning: overlap needs one attached and one isolated model\n";
        }
    }
    write_report(a.report, report);
    return 0;
}

struct DemoArgs {
    std::string model;
    std::string text;
};

int run_segment_demo(const DemoArgs& a) {
    AnyModel any = load_model(resolve_data_path(a.model));
    const auto* um = std::get_if<UnigramModel>(&any);
    if (!um) throw ConfigError("segment-demo needs a unigram model");
    if (um->space_mode == SpaceMode::Attached)
        throw ConfigError("segment-demo needs an isolated-mode model; attached models "
                          "anchor on spaces");
    size_t pos = 0;
    while (pos < a.text.size()) {
        const char32_t cp = utf8::decode_at(a.text, pos);
        if (detail::is_whitespace_cp(cp))
            throw ConfigError("segment-demo input must not contain whitespace");
    }
    const Tokenisation t = viterbi_tokenize(*um, a.text, SpaceMode::Isolated);
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) std::cout << ' ';
        std::cout << t.pieces[i];
    }
    std::cout << "\n";
    return 0;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const FormatError*>(&e)) return 3;
    if (dynamic_cast<const IoError*>(&e)) return 4;
    if (dynamic_cast<const CoverageError*>(&e)) return 5;
    if (dynamic_cast<const NormalizationError*>(&e)) return 6;
    if (dynamic_cast<const DecodeError*>(&e)) return 6;
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spacetok: subword tokenisation with conventional or standalone "
                 "space handling.\nPaths are resolved against $SPACETOK_DATA_DIR "
                 "when not found locally."};
    app.require_subcommand(1);

    TrainArgs train_args;
    TrainOptionPtrs train_opts;
    CLI::App* train = app.add_subcommand("train", "train a tokeniser on a text corpus");
    train_opts.input =
        train->add_option("-i,--input", train_args.input, "corpus file, one sentence per line");
    train_opts.output = train->add_option("-o,--output", train_args.output, "model file to write");
    train_opts.algorithm = train->add_option("--algorithm", train_args.algorithm,
                                             "bpe, unigram, or wordpiece (default bpe)");
    train_opts.mode = train->add_option(
        "--mode", train_args.mode, "attached (spaces attach to words) or isolated (default attached)");
    train_opts.vocab_size =
        train->add_option("--vocab-size", train_args.vocab_size, "target vocabulary size (default 16000)");
    train_opts.space_symbol =
        train->add_option("--space-symbol", train_args.space_symbol, "space replacement symbol (default U+2581)");
    train_opts.nfkc = train->add_flag("--nfkc", train_args.nfkc, "apply NFKC normalization");
    train_opts.no_collapse = train->add_flag("--no-collapse-whitespace", train_args.no_collapse,
                                             "keep repeated whitespace distinct");
    train_opts.threads = train->add_option("--threads", train_args.threads, "worker threads (default 1)");
    train_opts.seed_size =
        train->add_option("--seed-size", train_args.seed_size, "unigram: candidate cap (default 1000000)");
    train_opts.max_piece_length = train->add_option("--max-piece-length", train_args.max_piece_length,
                                                    "unigram: max piece length in characters (default 16)");
    train_opts.em_iterations = train->add_option("--em-iterations", train_args.em_iterations,
                                                 "unigram: EM steps per pruning round (default 2)");
    train_opts.shrink_factor = train->add_option("--shrink-factor", train_args.shrink_factor,
                                                 "unigram: vocabulary kept per round (default 0.75)");
    train_opts.max_word_length = train->add_option("--max-word-length", train_args.max_word_length,
                                                   "wordpiece: longest matchable word (default 100)");
    train->add_option("--config", train_args.config, "JSON config file; flags override it");
    train_opts.report = train->add_option("--report", train_args.report, "write a JSON training report");

    TokenizeArgs tok_args;
    CLI::App* tok = app.add_subcommand("tokenize", "tokenize text with a trained model");
    tok->add_option("-m,--model", tok_args.model, "model file")->required();
    tok->add_option("-i,--input", tok_args.input, "input file (default stdin)");
    tok->add_option("-o,--output", tok_args.output, "output file (default stdout)");
    tok->add_flag("--ids", tok_args.ids, "emit comma-separated token IDs");
    tok->add_flag("--no-spaces", tok_args.no_spaces,
                  "drop space tokens (isolated models only)");

    EvaluateArgs eval_args;
    CLI::App* eval = app.add_subcommand("evaluate", "score a model against gold morphology");
    eval->add_option("-m,--model", eval_args.model, "model file")->required();
    eval->add_option("-d,--dataset", eval_args.dataset, "gold segmentation file")->required();
    eval->add_option("--format", eval_args.format,
                     "ladec, morpholex, morphynet, dagobert, or custom")
        ->required();
    eval->add_option("--subset", eval_args.subset, "prefix or suffix: filter to affix-only records");
    eval->add_option("--lexicon", eval_args.lexicon, "affix lexicon for subset filtering");
    eval->add_flag("--skip-header", eval_args.skip_header, "skip the first dataset line");
    eval->add_flag("--keep-duplicates", eval_args.keep_duplicates,
                   "keep duplicate and conflicting parses");
    eval->add_flag("--macro", eval_args.macro, "average per-record metrics instead of pooling");
    eval->add_option("--threads", eval_args.threads, "worker threads (default 1)");
    eval->add_option("--report", eval_args.report, "write a JSON evaluation report");

    AnalyzeArgs an_args;
    CLI::App* an = app.add_subcommand("analyze", "vocabulary statistics for trained models");
    an->add_option("models", an_args.models, "model files (two for overlap: default, modified)")
        ->required()
        ->expected(-1);
    an->add_option("--lexicon", an_args.lexicon, "affix lexicon for prefix/suffix counts");
    an->add_option("--report", an_args.report, "write a JSON analysis report");

    DemoArgs demo_args;
    CLI::App* demo = app.add_subcommand("segment-demo", "segment text that has no spaces");
    demo->add_option("-m,--model", demo_args.model, "isolated-mode unigram model")->required();
    demo->add_option("text", demo_args.text, "string without whitespace");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*train) return run_train(train_args, train_opts);
        if (*tok) return run_tokenize(tok_args);
        if (*eval) return run_evaluate(eval_args);
        if (*an) return run_analyze(an_args);
        if (*demo) return run_segment_demo(demo_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 1;
}

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ead/correlation.hpp"
#include "ead/errors.hpp"
#include "ead/io.hpp"
#include "ead/metrics.hpp"
#include "ead/sweep.hpp"
#include "ead/tokenize.hpp"
#include "json.hpp"

namespace {

using namespace ead;

// Fixed default seed so unseeded runs are still reproducible.
constexpr std::uint64_t kDefaultSeed = 1729;
constexpr std::uint64_t kDefaultVocab = 30522;  // BERT WordPiece vocabulary size

std::uint64_t default_vocab() {
    if (const char* env = std::getenv("EAD_DEFAULT_VOCAB")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return v;
        std::cerr << "warning: ignoring invalid EAD_DEFAULT_VOCAB='" << env << "'\n";
    }
    return kDefaultVocab;
}

struct VocabOptions {
    std::uint64_t fixed = 0;  // 0 = unset
    std::string from_corpus;
    std::uint64_t ngram_vocab = 0;

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("--vocab", fixed,
                                  "Fixed vocabulary size V (default " +
                                      std::to_string(default_vocab()) +
                                      ", BERT's WordPiece vocabulary; override the default "
                                      "with EAD_DEFAULT_VOCAB)")
                      ->check(CLI::PositiveNumber);
        auto* b = cmd->add_option("--vocab-from", from_corpus,
                                  "Count V from this corpus instead of using a fixed value");
        a->excludes(b);
    }

    VocabSpec resolve(TokenizeMode mode, const CorpusReadOptions& read_opts) const {
        if (!from_corpus.empty()) {
            CorpusReadOptions opts = read_opts;
            opts.format = detect_corpus_format(from_corpus);
            auto corpus = read_corpus(from_corpus, opts);
            return VocabSpec::counted(count_vocab(corpus.lines, mode).vocab_size, from_corpus);
        }
        return VocabSpec::fixed(fixed != 0 ? fixed : default_vocab());
    }

    // Vocabulary used at n-gram order n: V_n when supplied, else V_1 with a
    // loud warning (V^n would vastly overstate the reachable universe).
    VocabSpec for_order(VocabSpec base, std::size_t n_order) const {
        if (n_order <= 1) return base;
        if (ngram_vocab != 0) return VocabSpec::ngram_derived(ngram_vocab);
        std::cerr << "warning: no --ngram-vocab given for n=" << n_order
                  << "; using the unigram vocabulary size V=" << base.size
                  << " as the n-gram universe\n";
        return base;
    }
};

TokenizeMode parse_mode(const std::string& mode) {
    if (mode == "whitespace") return TokenizeMode::Whitespace;
    if (mode == "lowercase-whitespace") return TokenizeMode::LowercaseWhitespace;
    throw CLI::ValidationError("--mode", "unknown tokenizer mode: " + mode);
}

ResponseSet to_response_set(const std::vector<std::string>& lines, TokenizeMode mode,
                            TokenInterner& interner) {
    ResponseSet set;
    set.responses.reserve(lines.size());
    for (const auto& line : lines) set.responses.push_back(tokenize(line, mode, interner));
    return set;
}

void report_skipped(const CorpusLines& corpus) {
    for (const auto& s : corpus.skipped) std::cerr << "skipped " << s << "\n";
}

// ---- score ----------------------------------------------------------------

struct ScoreArgs {
    std::vector<std::string> files;
    VocabOptions vocab;
    std::size_t n_order = 1;
    std::string mode = "whitespace";
    bool jsonl = false;
    bool lenient = false;
    std::string format = "table";
};

int run_score(const ScoreArgs& args) {
    TokenizeMode mode = parse_mode(args.mode);
    CorpusReadOptions read_opts{CorpusFormat::Plain, args.lenient};
    VocabSpec base = args.vocab.resolve(mode, read_opts);
    VocabSpec vocab = args.vocab.for_order(base, args.n_order);

    bool table = args.format == "table";
    if (table)
        std::printf("%-28s %3s %10s %10s %14s %14s %10s\n", "file", "n", "N", "C", "distinct",
                    "ead", "vocab");
    for (const auto& file : args.files) {
        CorpusReadOptions opts = read_opts;
        if (args.jsonl || detect_corpus_format(file) == CorpusFormat::JsonLines)
            opts.format = CorpusFormat::JsonLines;
        CorpusLines corpus = read_corpus(file, opts);
        report_skipped(corpus);
        TokenInterner interner;
        ResponseSet set = to_response_set(corpus.lines, mode, interner);
        MetricReport report = ead_score(set, args.n_order, vocab);
        if (!report.warning.empty()) std::cerr << "warning: " << file << ": " << report.warning << "\n";
        if (table) {
            std::printf("%-28s %3zu %10llu %10llu %14.12g %14.12g %10llu\n", file.c_str(),
                        report.n_order, static_cast<unsigned long long>(report.n_distinct),
                        static_cast<unsigned long long>(report.n_total), report.distinct,
                        report.ead, static_cast<unsigned long long>(report.vocab.size));
        } else {
            nlohmann::json j = nlohmann::json::parse(report.to_json());
            j["file"] = file;
            std::cout << j.dump() << "\n";
        }
    }
    return 0;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
    std::string source = "designated";
    std::string corpus_path;
    std::uint64_t designated_vocab = 0;  // 0 = default
    std::vector<std::size_t> lengths = {5, 10, 15, 20, 30, 40, 60, 80};
    std::size_t set_size = 2000;
    std::size_t trials = 10;
    std::uint64_t seed = kDefaultSeed;
    std::size_t n_order = 1;
    std::string mode = "whitespace";
    std::string match = "exact";
    std::string policy = "resample";
    VocabOptions vocab;
    bool jsonl = false;
    bool lenient = false;
    std::string out_dir;
    std::string dump_dir;
};

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << contents;
}

int run_sweep_cmd(const SweepArgs& args) {
    TokenizeMode mode = parse_mode(args.mode);
    SweepConfig config;
    config.lengths = args.lengths;
    config.set_size = args.set_size;
    config.trials = args.trials;
    config.base_seed = args.seed;
    config.n_order = args.n_order;
    config.designated_vocab = args.designated_vocab != 0 ? args.designated_vocab : default_vocab();
    if (args.match == "bucket") config.match = LengthMatch::Bucket;
    else if (args.match != "exact") throw CLI::ValidationError("--match", args.match);
    if (args.policy == "clamp") config.rejection = RejectionPolicy::Clamp;
    else if (args.policy != "resample") throw CLI::ValidationError("--policy", args.policy);

    CorpusReadOptions read_opts{CorpusFormat::Plain, args.lenient};
    std::vector<TokenSequence> corpus_tokens;
    TokenInterner interner;
    if (args.source == "corpus") {
        if (args.corpus_path.empty())
            throw CLI::ValidationError("--corpus", "required when --source corpus");
        config.source = SweepConfig::Source::Corpus;
        CorpusReadOptions opts = read_opts;
        if (args.jsonl || detect_corpus_format(args.corpus_path) == CorpusFormat::JsonLines)
            opts.format = CorpusFormat::JsonLines;
        CorpusLines corpus = read_corpus(args.corpus_path, opts);
        report_skipped(corpus);
        for (const auto& line : corpus.lines)
            corpus_tokens.push_back(tokenize(line, mode, interner));
    } else if (args.source != "designated") {
        throw CLI::ValidationError("--source", args.source);
    }
    VocabSpec base = args.vocab.resolve(mode, read_opts);
    if (args.source == "designated" && args.vocab.fixed == 0 && args.vocab.from_corpus.empty())
        base = VocabSpec::fixed(config.designated_vocab);
    config.vocab = args.vocab.for_order(base, args.n_order);

    SetSink sink;
    if (!args.dump_dir.empty()) {
        std::filesystem::create_directories(args.dump_dir);
        bool named = args.source == "corpus";
        sink = [&, named](std::size_t length, std::size_t trial, const ResponseSet& set) {
            std::filesystem::path path = std::filesystem::path(args.dump_dir) /
                ("set_L" + std::to_string(length) + "_t" + std::to_string(trial) + ".jsonl");
            std::ofstream out(path, std::ios::binary);
            if (!out) throw IoError("cannot write " + path.string());
            for (const auto& resp : set.responses) {
                std::string text;
                for (std::size_t i = 0; i < resp.size(); ++i) {
                    if (i) text += ' ';
                    text += named ? interner.name(resp.tokens[i])
                                  : std::to_string(resp.tokens[i]);
                }
                out << nlohmann::json{{"response", text}}.dump() << "\n";
            }
        };
    }

    SweepResult result = run_sweep(
        config, config.source == SweepConfig::Source::Corpus ? &corpus_tokens : nullptr, sink);

    std::filesystem::create_directories(args.out_dir);
    std::filesystem::path out(args.out_dir);
    std::ostringstream detail, summary;
    write_detail_csv(detail, result);
    write_summary_csv(summary, result);
    write_file(out / "detail.csv", detail.str());
    write_file(out / "summary.csv", summary.str());
    std::string bias = result.fit
        ? result.fit->to_json()
        : nlohmann::json{{"slope_distinct", nullptr}, {"slope_ead", nullptr},
                         {"flatness_ratio", nullptr},
                         {"note", "slope undefined: fewer than 3 lengths"}}.dump(2);
    write_file(out / "bias.json", bias + "\n");
    std::cout << "wrote " << (out / "detail.csv").string() << ", "
              << (out / "summary.csv").string() << ", " << (out / "bias.json").string() << "\n";
    return 0;
}

// ---- correlate ------------------------------------------------------------

struct CorrelateArgs {
    std::string csv_path;
    std::string x_column;
    std::string y_column;
    std::string method = "all";
    bool exact = false;
};

int run_correlate(const CorrelateArgs& args) {
    CsvTable table = read_csv(args.csv_path);
    PairedSample sample{table.numeric_column(args.x_column),
                        table.numeric_column(args.y_column)};
    std::vector<CorrMethod> methods;
    if (args.method == "all")
        methods = {CorrMethod::Pearson, CorrMethod::Spearman, CorrMethod::KendallB};
    else if (args.method == "pearson") methods = {CorrMethod::Pearson};
    else if (args.method == "spearman") methods = {CorrMethod::Spearman};
    else if (args.method == "kendall") methods = {CorrMethod::KendallB};
    else throw CLI::ValidationError("--method", args.method);

    for (CorrMethod m : methods)
        std::cout << correlate(sample, m, args.exact).to_json() << "\n";
    return 0;
}

// ---- vocab ----------------------------------------------------------------

struct VocabArgs {
    std::string corpus_path;
    std::string mode = "whitespace";
    bool jsonl = false;
    bool lenient = false;
    bool census = false;
};

int run_vocab(const VocabArgs& args) {
    CorpusReadOptions opts{CorpusFormat::Plain, args.lenient};
    if (args.jsonl || detect_corpus_format(args.corpus_path) == CorpusFormat::JsonLines)
        opts.format = CorpusFormat::JsonLines;
    CorpusLines corpus = read_corpus(args.corpus_path, opts);
    report_skipped(corpus);
    VocabCensus result = count_vocab(corpus.lines, parse_mode(args.mode));
    std::cout << result.vocab_size << "\n";
    if (args.census) {
        std::vector<std::pair<std::string, std::uint64_t>> rows(result.census.begin(),
                                                                result.census.end());
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.second != b.second ? a.second > b.second : a.first < b.first;
        });
        for (const auto& [token, freq] : rows)
            std::cerr << token << "\t" << freq << "\n";
    }
    return 0;
}

void add_mode_option(CLI::App* cmd, std::string& mode) {
    cmd->add_option("--mode", mode, "Tokenizer: whitespace | lowercase-whitespace")
        ->default_val("whitespace");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diversity metrics for generated text: original Distinct and "
                 "expectation-adjusted Distinct (EAD), with length-bias sweeps and "
                 "correlation analysis"};
    app.require_subcommand(1);

    ScoreArgs score;
    auto* score_cmd = app.add_subcommand("score", "Score response files (Distinct and EAD)");
    score_cmd->add_option("files", score.files, "Response files, one response per line")
        ->required();
    score.vocab.attach(score_cmd);
    score_cmd->add_option("--ngram-vocab", score.vocab.ngram_vocab,
                          "Vocabulary size of the n-gram universe when -n > 1");
    score_cmd->add_option("-n,--ngram", score.n_order, "N-gram order")->default_val(1);
    add_mode_option(score_cmd, score.mode);
    score_cmd->add_flag("--jsonl", score.jsonl, "Force JSON-lines input (field 'response')");
    score_cmd->add_flag("--lenient", score.lenient, "Skip unparseable lines with a report");
    score_cmd->add_option("--format", score.format, "Output: table | json")->default_val("table");

    SweepArgs sweep;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Metric-vs-length sweep over sampled response sets");
    sweep_cmd->add_option("--source", sweep.source, "designated | corpus")
        ->default_val("designated");
    sweep_cmd->add_option("--corpus", sweep.corpus_path, "Corpus file for --source corpus");
    sweep_cmd->add_option("--v", sweep.designated_vocab,
                          "Vocabulary size of the designated sampler (default " +
                              std::to_string(kDefaultVocab) + ")");
    sweep_cmd->add_option("--lengths", sweep.lengths, "Response lengths to sweep")
        ->delimiter(',');
    sweep_cmd->add_option("--set-size", sweep.set_size, "Responses per sampled set")
        ->default_val(2000);
    sweep_cmd->add_option("--trials", sweep.trials, "Sampled sets per length")->default_val(10);
    sweep_cmd->add_option("--seed", sweep.seed,
                          "Base seed (default " + std::to_string(kDefaultSeed) + ")");
    sweep_cmd->add_option("-n,--ngram", sweep.n_order, "N-gram order")->default_val(1);
    sweep.vocab.attach(sweep_cmd);
    sweep_cmd->add_option("--ngram-vocab", sweep.vocab.ngram_vocab,
                          "Vocabulary size of the n-gram universe when -n > 1");
    add_mode_option(sweep_cmd, sweep.mode);
    sweep_cmd->add_option("--match", sweep.match, "Corpus length match: exact | bucket (+/-1)")
        ->default_val("exact");
    sweep_cmd->add_option("--policy", sweep.policy,
                          "Designated draws with k >= v: resample | clamp")
        ->default_val("resample");
    sweep_cmd->add_flag("--jsonl", sweep.jsonl, "Force JSON-lines corpus input");
    sweep_cmd->add_flag("--lenient", sweep.lenient, "Skip unparseable corpus lines");
    sweep_cmd->add_option("--out", sweep.out_dir, "Output directory for CSV/JSON results")
        ->required();
    sweep_cmd->add_option("--dump-sets", sweep.dump_dir,
                          "Dump every sampled set to this directory as JSON-lines");

    CorrelateArgs corr;
    auto* corr_cmd = app.add_subcommand("correlate",
                                        "Correlate two numeric CSV columns with p-values");
    corr_cmd->add_option("csv", corr.csv_path, "CSV file with named columns")->required();
    corr_cmd->add_option("--x", corr.x_column, "Column for the first variable")->required();
    corr_cmd->add_option("--y", corr.y_column, "Column for the second variable")->required();
    corr_cmd->add_option("--method", corr.method, "pearson | spearman | kendall | all")
        ->default_val("all");
    corr_cmd->add_flag("--exact", corr.exact,
                       "Exact permutation p-value for Spearman (n <= 10)");

    VocabArgs vocab;
    auto* vocab_cmd = app.add_subcommand("vocab", "Count the vocabulary size of a corpus");
    vocab_cmd->add_option("corpus", vocab.corpus_path, "Corpus file")->required();
    add_mode_option(vocab_cmd, vocab.mode);
    vocab_cmd->add_flag("--jsonl", vocab.jsonl, "Force JSON-lines input");
    vocab_cmd->add_flag("--lenient", vocab.lenient, "Skip unparseable lines");
    vocab_cmd->add_flag("--census", vocab.census, "Print token frequencies to stderr");

    try {
        app.parse(argc, argv);
        if (score_cmd->parsed()) return run_score(score);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep);
        if (corr_cmd->parsed()) return run_correlate(corr);
        if (vocab_cmd->parsed()) return run_vocab(vocab);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ead::ComputationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ead::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#include "ead/metrics.hpp"

#include <cmath>
#include <unordered_set>

#include "ead/errors.hpp"
#include "json.hpp"

namespace ead {

const char* VocabSpec::source_name() const {
    switch (source) {
        case Source::Fixed: return "fixed";
        case Source::CountedFromCorpus: return "counted-from-corpus";
        case Source::NgramDerived: return "ngram-derived";
    }
    return "unknown";
}

std::string MetricReport::to_json() const {
    nlohmann::json j{
        {"n_order", n_order},
        {"n_distinct", n_distinct},
        {"n_total", n_total},
        {"vocab_size", vocab.size},
        {"vocab_source", vocab.source_name()},
        {"distinct", distinct},
        {"ead", ead},
    };
    if (!warning.empty()) j["warning"] = warning;
    return j.dump();
}

namespace {

struct NgramHash {
    std::size_t operator()(const Ngram& g) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a over token ids
        for (TokenId id : g) {
            h ^= id;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

DistinctStats distinct_stats(const ResponseSet& set, std::size_t n_order) {
    if (n_order == 0) throw ComputationError("n-gram order must be >= 1");
    if (set.responses.empty()) throw ComputationError("empty input: no responses in set");

    DistinctStats stats;
    if (n_order == 1) {
        std::unordered_set<TokenId> seen;
        for (const auto& resp : set.responses) {
            stats.n_total += resp.size();
            seen.insert(resp.tokens.begin(), resp.tokens.end());
        }
        stats.n_distinct = seen.size();
    } else {
        std::unordered_set<Ngram, NgramHash> seen;
        for (const auto& resp : set.responses) {
            if (resp.size() < n_order) continue;
            stats.n_total += resp.size() - n_order + 1;
            for (std::size_t i = 0; i + n_order <= resp.size(); ++i)
                seen.emplace(resp.tokens.begin() + i, resp.tokens.begin() + i + n_order);
        }
        stats.n_distinct = seen.size();
    }
    if (stats.n_total == 0)
        throw ComputationError("empty input: all " + std::to_string(set.size()) +
                               " responses are shorter than n=" + std::to_string(n_order));
    return stats;
}

double expected_distinct_upper(std::uint64_t vocab_size, double total_count) {
    if (vocab_size == 0) throw ComputationError("vocabulary size must be >= 1");
    if (total_count < 0) throw ComputationError("total count must be >= 0");
    if (vocab_size == 1) return total_count > 0 ? 1.0 : 0.0;
    if (total_count == 0.0) return 0.0;
    if (total_count == 1.0) return 1.0;  // V(1-(V-1)/V) = 1 for every V
    // V(1-((V-1)/V)^C) = -V*expm1(C*log1p(-1/V)); naive powering loses all
    // precision once C*log1p(-1/V) is tiny or C is huge.
    double v = static_cast<double>(vocab_size);
    return -v * std::expm1(total_count * std::log1p(-1.0 / v));
}

double expected_distinct_exact_iid(std::span<const double> pmf,
                                   std::span<const std::uint64_t> lengths) {
    double sum = 0.0;
    for (double p : pmf) {
        if (p < 0.0) throw ComputationError("pmf entries must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ComputationError("pmf does not sum to 1 (got " + std::to_string(sum) + ")");

    double expected = 0.0;
    for (double p : pmf) {
        if (p == 0.0) continue;
        if (p >= 1.0) {
            for (auto t : lengths)
                if (t > 0) { expected += 1.0; break; }
            continue;
        }
        // 1 - prod_k (1-p)^{t_k}, accumulated in the log domain
        double log_absent = 0.0;
        for (auto t : lengths) log_absent += static_cast<double>(t) * std::log1p(-p);
        expected += -std::expm1(log_absent);
    }
    return expected;
}

MetricReport distinct_score(const ResponseSet& set, std::size_t n_order) {
    DistinctStats s = distinct_stats(set, n_order);
    MetricReport report;
    report.n_order = n_order;
    report.n_distinct = s.n_distinct;
    report.n_total = s.n_total;
    report.distinct = static_cast<double>(s.n_distinct) / static_cast<double>(s.n_total);
    return report;
}

MetricReport ead_score(const ResponseSet& set, std::size_t n_order, const VocabSpec& vocab) {
    if (vocab.size == 0) throw ComputationError("vocabulary size must be >= 1");
    MetricReport report = distinct_score(set, n_order);
    report.vocab = vocab;
    double denom = expected_distinct_upper(vocab.size, static_cast<double>(report.n_total));
    report.ead = static_cast<double>(report.n_distinct) / denom;
    if (report.n_distinct > vocab.size)
        report.warning = "N=" + std::to_string(report.n_distinct) + " exceeds V=" +
                         std::to_string(vocab.size) +
                         "; vocabulary and tokenizer are probably mismatched";
    return report;
}

}  // namespace ead

#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "ead/tokenize.hpp"

namespace ead {

struct VocabSpec {
    enum class Source { Fixed, CountedFromCorpus, NgramDerived };

    std::uint64_t size = 0;
    Source source = Source::Fixed;
    std::string origin;  // corpus path when counted, empty otherwise

    static VocabSpec fixed(std::uint64_t v) { return {v, Source::Fixed, {}}; }
    static VocabSpec counted(std::uint64_t v, std::string corpus) {
        return {v, Source::CountedFromCorpus, std::move(corpus)};
    }
    static VocabSpec ngram_derived(std::uint64_t v) { return {v, Source::NgramDerived, {}}; }

    const char* source_name() const;
};

struct MetricReport {
    std::size_t n_order = 1;
    std::uint64_t n_distinct = 0;  // N: unique n-grams in the set
    std::uint64_t n_total = 0;     // C: total n-grams in the set
    VocabSpec vocab;
    double distinct = 0.0;  // N / C
    double ead = 0.0;       // N / (V[1 - ((V-1)/V)^C])
    std::string warning;    // nonempty when N exceeds V

    std::string to_json() const;
};

struct DistinctStats {
    std::uint64_t n_distinct = 0;
    std::uint64_t n_total = 0;
};

// Unique and total n-gram counts over the whole set. Throws ComputationError
// when the set is empty or every response is shorter than n.
DistinctStats distinct_stats(const ResponseSet& set, std::size_t n_order);

// E[N_upper] = V(1 - ((V-1)/V)^C), evaluated in the log domain. This is the
// expected number of distinct values among C i.i.d. uniform draws from a
// V-symbol alphabet. Increasing in C, bounded by V, exactly 1 at C = 1.
double expected_distinct_upper(std::uint64_t vocab_size, double total_count);

// Exact expectation of the distinct count for i.i.d. draws from an arbitrary
// pmf, one response per entry of `lengths`. Reduces to
// expected_distinct_upper(V, sum(lengths)) for the uniform pmf.
double expected_distinct_exact_iid(std::span<const double> pmf,
                                   std::span<const std::uint64_t> lengths);

// Original Distinct: N / C.
MetricReport distinct_score(const ResponseSet& set, std::size_t n_order);

// Expectation-adjusted Distinct: N / expected_distinct_upper(V, C). May
// exceed 1; never clamped. Sets `warning` when N > V.
MetricReport ead_score(const ResponseSet& set, std::size_t n_order, const VocabSpec& vocab);

}  // namespace ead

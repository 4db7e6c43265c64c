#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ead/metrics.hpp"
#include "ead/sampler.hpp"

namespace ead {

struct SweepConfig {
    enum class Source { Designated, Corpus };

    std::vector<std::size_t> lengths;  // strictly increasing
    std::size_t set_size = 2000;
    std::size_t trials = 10;
    Source source = Source::Designated;
    std::uint64_t designated_vocab = 30522;
    RejectionPolicy rejection = RejectionPolicy::Resample;
    LengthMatch match = LengthMatch::Exact;
    VocabSpec vocab = VocabSpec::fixed(30522);
    std::size_t n_order = 1;
    std::uint64_t base_seed = 0;
};

struct SweepCell {
    std::size_t length = 0;
    std::size_t trial = 0;
    MetricReport report;  // carries both distinct and ead
};

struct LengthSummary {
    std::size_t length = 0;
    double mean_distinct = 0.0;
    double sd_distinct = 0.0;
    double mean_ead = 0.0;
    double sd_ead = 0.0;
};

struct BiasSummary {
    double slope_distinct = 0.0;
    double intercept_distinct = 0.0;
    double slope_ead = 0.0;
    double intercept_ead = 0.0;
    double flatness_ratio = 0.0;  // |slope_distinct| / max(|slope_ead|, 1e-12)

    std::string to_json() const;
};

struct SweepResult {
    std::vector<SweepCell> cells;        // keyed by (length index, trial)
    std::vector<LengthSummary> summaries;
    std::optional<BiasSummary> fit;      // absent when fewer than 3 lengths
};

// Ordinary least squares on (x, y); returns {slope, intercept}.
std::pair<double, double> ols_fit(std::span<const double> x, std::span<const double> y);

// Optional observer for sampled sets (e.g. to dump them for audit).
using SetSink = std::function<void(std::size_t length, std::size_t trial, const ResponseSet&)>;

// Full (length x trial) grid; cell seeds derive from (base_seed, length,
// trial) so results are independent of evaluation order. Corpus shortfalls
// are detected up front and reported for all failing lengths at once.
SweepResult run_sweep(const SweepConfig& config,
                      const std::vector<TokenSequence>* corpus = nullptr,
                      const SetSink& sink = {});

// OLS slopes of the per-length means; requires >= 3 lengths.
BiasSummary bias_summary(const SweepResult& result);

// Plotting interface. Deterministic formatting: 12 significant digits.
void write_detail_csv(std::ostream& out, const SweepResult& result);
void write_summary_csv(std::ostream& out, const SweepResult& result);

}  // namespace ead

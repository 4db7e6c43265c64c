#pragma once

#include <span>
#include <string>
#include <vector>

namespace ead {

struct PairedSample {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
};

enum class CorrMethod { Pearson, Spearman, KendallB };
const char* method_name(CorrMethod m);

struct CorrelationResult {
    CorrMethod method = CorrMethod::Pearson;
    double coefficient = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    bool significant_10 = false;  // p < 0.1
    bool significant_05 = false;  // p < 0.05

    std::string to_json() const;
};

// Average (fractional) ranks, ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Product-moment r with a two-sided t test on n-2 degrees of freedom.
// Requires n >= 3 and nonzero variance on both sides.
CorrelationResult pearson(const PairedSample& sample);

// Pearson on average ranks. p-value via the same t transform by default;
// exact_p enumerates all permutations (n <= 10).
CorrelationResult spearman(const PairedSample& sample, bool exact_p = false);

// Kendall tau-b with tie-corrected normal approximation for the p-value.
CorrelationResult kendall(const PairedSample& sample);

CorrelationResult correlate(const PairedSample& sample, CorrMethod method,
                            bool exact_p = false);

// Affine map sending min -> lo and max -> hi (default [0, 10]). Throws on a
// constant list.
std::vector<double> normalize_scores(std::span<const double> scores, double lo = 0.0,
                                     double hi = 10.0);

}  // namespace ead

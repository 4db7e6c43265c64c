#include "ead/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "ead/errors.hpp"
#include "json.hpp"

namespace ead {

std::string BiasSummary::to_json() const {
    return nlohmann::json{
        {"slope_distinct", slope_distinct},
        {"intercept_distinct", intercept_distinct},
        {"slope_ead", slope_ead},
        {"intercept_ead", intercept_ead},
        {"flatness_ratio", flatness_ratio},
    }.dump(2);
}

std::pair<double, double> ols_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ComputationError("ols_fit needs at least 2 paired points");
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw ComputationError("ols_fit: x values are all equal");
    double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

namespace {

void validate(const SweepConfig& config) {
    if (config.lengths.empty()) throw ComputationError("sweep needs at least one length");
    for (std::size_t i = 1; i < config.lengths.size(); ++i)
        if (config.lengths[i] <= config.lengths[i - 1])
            throw ComputationError("sweep lengths must be strictly increasing");
    if (config.trials == 0) throw ComputationError("sweep needs at least one trial");
    if (config.set_size == 0) throw ComputationError("sweep needs set_size >= 1");
}

void check_corpus_availability(const SweepConfig& config,
                               const std::vector<TokenSequence>& corpus) {
    std::vector<std::string> failures;
    for (std::size_t length : config.lengths) {
        std::size_t available = 0;
        for (const auto& resp : corpus) {
            std::size_t t = resp.size();
            bool ok = (config.match == LengthMatch::Exact)
                          ? t == length
                          : t + 1 >= length && t <= length + 1;
            if (ok) ++available;
        }
        if (available < config.set_size)
            failures.push_back("length " + std::to_string(length) + " (" +
                               std::to_string(available) + " of " +
                               std::to_string(config.set_size) + " available)");
    }
    if (!failures.empty()) {
        std::string msg = "corpus shortfall at:";
        for (const auto& f : failures) msg += " " + f + ";";
        throw ComputationError(msg);
    }
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config, const std::vector<TokenSequence>* corpus,
                      const SetSink& sink) {
    validate(config);
    if (config.source == SweepConfig::Source::Corpus) {
        if (corpus == nullptr) throw ComputationError("corpus source requires corpus data");
        check_corpus_availability(config, *corpus);
    }

    SweepResult result;
    result.cells.reserve(config.lengths.size() * config.trials);
    for (std::size_t length : config.lengths) {
        std::vector<double> distincts, eads;
        distincts.reserve(config.trials);
        eads.reserve(config.trials);
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            std::uint64_t seed = derive_seed(config.base_seed, length, trial);
            ResponseSet set =
                config.source == SweepConfig::Source::Designated
                    ? sample_designated_set(config.designated_vocab, length, config.set_size,
                                            seed, config.rejection)
                    : sample_corpus_set(*corpus, length, config.set_size, seed, config.match);
            if (sink) sink(length, trial, set);
            MetricReport report = ead_score(set, config.n_order, config.vocab);
            distincts.push_back(report.distinct);
            eads.push_back(report.ead);
            result.cells.push_back({length, trial, std::move(report)});
        }
        auto mean_sd = [](const std::vector<double>& v) {
            double n = static_cast<double>(v.size());
            double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
            if (v.size() < 2) return std::pair{mean, 0.0};
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            return std::pair{mean, std::sqrt(ss / (n - 1.0))};
        };
        auto [md, sd_d] = mean_sd(distincts);
        auto [me, sd_e] = mean_sd(eads);
        result.summaries.push_back({length, md, sd_d, me, sd_e});
    }
    if (config.lengths.size() >= 3) result.fit = bias_summary(result);
    return result;
}

BiasSummary bias_summary(const SweepResult& result) {
    if (result.summaries.size() < 3)
        throw ComputationError("bias summary needs at least 3 lengths, got " +
                               std::to_string(result.summaries.size()));
    std::vector<double> x, yd, ye;
    for (const auto& s : result.summaries) {
        x.push_back(static_cast<double>(s.length));
        yd.push_back(s.mean_distinct);
        ye.push_back(s.mean_ead);
    }
    BiasSummary bias;
    std::tie(bias.slope_distinct, bias.intercept_distinct) = ols_fit(x, yd);
    std::tie(bias.slope_ead, bias.intercept_ead) = ols_fit(x, ye);
    bias.flatness_ratio =
        std::fabs(bias.slope_distinct) / std::max(std::fabs(bias.slope_ead), 1e-12);
    return bias;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void write_detail_csv(std::ostream& out, const SweepResult& result) {
    out << "length,trial,n_distinct,n_total,distinct,ead\n";
    for (const auto& cell : result.cells)
        out << cell.length << ',' << cell.trial << ',' << cell.report.n_distinct << ','
            << cell.report.n_total << ',' << fmt(cell.report.distinct) << ','
            << fmt(cell.report.ead) << '\n';
}

void write_summary_csv(std::ostream& out, const SweepResult& result) {
    out << "length,mean_distinct,sd_distinct,mean_ead,sd_ead\n";
    for (const auto& s : result.summaries)
        out << s.length << ',' << fmt(s.mean_distinct) << ',' << fmt(s.sd_distinct) << ','
            << fmt(s.mean_ead) << ',' << fmt(s.sd_ead) << '\n';
}

}  // namespace ead

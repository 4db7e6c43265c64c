#include "ead/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ead/errors.hpp"
#include "ead/special.hpp"
#include "json.hpp"

namespace ead {

const char* method_name(CorrMethod m) {
    switch (m) {
        case CorrMethod::Pearson: return "pearson";
        case CorrMethod::Spearman: return "spearman";
        case CorrMethod::KendallB: return "kendall-b";
    }
    return "unknown";
}

std::string CorrelationResult::to_json() const {
    // Table-style markers: dagger p < 0.1, double dagger p < 0.05
    const char* flags = significant_05 ? "‡" : (significant_10 ? "†" : "");
    return nlohmann::json{
        {"method", method_name(method)},
        {"coefficient", coefficient},
        {"p_value", p_value},
        {"n", n},
        {"flags", flags},
    }.dump();
}

namespace {

void validate(const PairedSample& sample) {
    if (sample.x.size() != sample.y.size())
        throw ComputationError("paired sample lengths differ (" + std::to_string(sample.x.size()) +
                               " vs " + std::to_string(sample.y.size()) + ")");
    if (sample.size() < 3)
        throw ComputationError("insufficient data: need n >= 3 pairs, got " +
                               std::to_string(sample.size()));
}

// Product-moment r on centered data; throws when either side is constant.
double pearson_r(std::span<const double> x, std::span<const double> y) {
    std::size_t n = x.size();
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw ComputationError("undefined correlation: a variable has zero variance");
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

double t_test_p(double r, std::size_t n) {
    double df = static_cast<double>(n - 2);
    double denom = 1.0 - r * r;
    if (denom <= 0.0) return 0.0;
    double t = r * std::sqrt(df / denom);
    return student_t_two_sided_p(t, df);
}

CorrelationResult make_result(CorrMethod method, double coef, double p, std::size_t n) {
    CorrelationResult res;
    res.method = method;
    res.coefficient = coef;
    res.p_value = p;
    res.n = n;
    res.significant_10 = p < 0.1;
    res.significant_05 = p < 0.05;
    return res;
}

// Tie group sizes of a value list.
std::vector<std::size_t> tie_groups(std::span<const double> values) {
    std::map<double, std::size_t> counts;
    for (double v : values) ++counts[v];
    std::vector<std::size_t> groups;
    for (const auto& [_, c] : counts)
        if (c > 1) groups.push_back(c);
    return groups;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
    std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

CorrelationResult pearson(const PairedSample& sample) {
    validate(sample);
    double r = pearson_r(sample.x, sample.y);
    return make_result(CorrMethod::Pearson, r, t_test_p(r, sample.size()), sample.size());
}

CorrelationResult spearman(const PairedSample& sample, bool exact_p) {
    validate(sample);
    std::vector<double> rx = average_ranks(sample.x);
    std::vector<double> ry = average_ranks(sample.y);
    double rho = pearson_r(rx, ry);
    double p;
    if (exact_p) {
        if (sample.size() > 10)
            throw ComputationError("exact permutation p-value is limited to n <= 10");
        // every distinct arrangement of the y ranks is equally likely under
        // the null, so counting distinct arrangements is unbiased with ties
        std::vector<double> perm = ry;
        std::sort(perm.begin(), perm.end());
        std::uint64_t total = 0, at_least = 0;
        do {
            ++total;
            if (std::fabs(pearson_r(rx, perm)) >= std::fabs(rho) - 1e-12) ++at_least;
        } while (std::next_permutation(perm.begin(), perm.end()));
        p = static_cast<double>(at_least) / static_cast<double>(total);
    } else {
        p = t_test_p(rho, sample.size());
    }
    return make_result(CorrMethod::Spearman, rho, p, sample.size());
}

CorrelationResult kendall(const PairedSample& sample) {
    validate(sample);
    std::size_t n = sample.size();
    std::int64_t concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = sample.x[i] - sample.x[j];
            double dy = sample.y[i] - sample.y[j];
            double prod = dx * dy;
            if (prod > 0.0) ++concordant;
            else if (prod < 0.0) ++discordant;
        }
    }
    auto pair_count = [](const std::vector<std::size_t>& groups, int order) {
        double s = 0.0;
        for (std::size_t t : groups) {
            double td = static_cast<double>(t);
            if (order == 1) s += td * (td - 1.0);
            else if (order == 2) s += td * (td - 1.0) * (td - 2.0);
            else s += td * (td - 1.0) * (2.0 * td + 5.0);
        }
        return s;
    };
    std::vector<std::size_t> gx = tie_groups(sample.x);
    std::vector<std::size_t> gy = tie_groups(sample.y);
    double nd = static_cast<double>(n);
    double n0 = nd * (nd - 1.0) / 2.0;
    double n1 = pair_count(gx, 1) / 2.0;
    double n2 = pair_count(gy, 1) / 2.0;
    if (n1 >= n0 || n2 >= n0)
        throw ComputationError("undefined correlation: a variable has zero variance");
    double s = static_cast<double>(concordant - discordant);
    double tau = s / std::sqrt((n0 - n1) * (n0 - n2));
    tau = std::clamp(tau, -1.0, 1.0);

    // tie-adjusted variance of S (reduces to n(n-1)(2n+5)/18 without ties)
    double v0 = nd * (nd - 1.0) * (2.0 * nd + 5.0);
    double vt = pair_count(gx, 3);
    double vu = pair_count(gy, 3);
    double v1 = pair_count(gx, 1) * pair_count(gy, 1) / (2.0 * nd * (nd - 1.0));
    double v2 = pair_count(gx, 2) * pair_count(gy, 2) / (9.0 * nd * (nd - 1.0) * (nd - 2.0));
    double var_s = (v0 - vt - vu) / 18.0 + v1 + v2;
    double z = s / std::sqrt(var_s);
    return make_result(CorrMethod::KendallB, tau, normal_two_sided_p(z), n);
}

CorrelationResult correlate(const PairedSample& sample, CorrMethod method, bool exact_p) {
    switch (method) {
        case CorrMethod::Pearson: return pearson(sample);
        case CorrMethod::Spearman: return spearman(sample, exact_p);
        case CorrMethod::KendallB: return kendall(sample);
    }
    throw ComputationError("unknown correlation method");
}

std::vector<double> normalize_scores(std::span<const double> scores, double lo, double hi) {
    if (scores.empty()) throw ComputationError("cannot normalize an empty score list");
    auto [mn, mx] = std::minmax_element(scores.begin(), scores.end());
    if (*mn == *mx)
        throw ComputationError("degenerate range: all scores equal " + std::to_string(*mn));
    std::vector<double> out;
    out.reserve(scores.size());
    for (double s : scores) out.push_back(lo + (hi - lo) * (s - *mn) / (*mx - *mn));
    return out;
}

}  // namespace ead

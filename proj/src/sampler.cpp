#include "ead/sampler.hpp"

#include <cmath>
#include <numeric>

#include "ead/errors.hpp"
#include "ead/special.hpp"

namespace ead {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = base;
    std::uint64_t h = splitmix64(state);
    state ^= a;
    h ^= splitmix64(state);
    state ^= b;
    h ^= splitmix64(state);
    return h;
}

double Rng::uniform() {
    // 53 random bits into [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw ComputationError("below(0)");
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

namespace {

// Sequential search by cdf inversion; exact for small means.
std::uint64_t poisson_inversion(Rng& rng, double mean) {
    double p = std::exp(-mean);
    double cdf = p;
    double u = rng.uniform();
    std::uint64_t k = 0;
    while (u > cdf) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
        if (p < 1e-320) break;  // u in the far tail; cdf saturated
    }
    return k;
}

// Hormann's PTRS transformed-rejection sampler, exact for mean >= 10.
std::uint64_t poisson_ptrs(Rng& rng, double mean) {
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        double u = rng.uniform() - 0.5;
        double v = rng.uniform();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            kf * log_mean - mean - std::lgamma(kf + 1.0))
            return static_cast<std::uint64_t>(kf);
    }
}

}  // namespace

std::uint64_t poisson_draw(Rng& rng, double mean) {
    if (mean < 0.0) throw ComputationError("Poisson mean must be nonnegative");
    if (mean == 0.0) return 0;
    return mean < 10.0 ? poisson_inversion(rng, mean) : poisson_ptrs(rng, mean);
}

DesignatedSampler::DesignatedSampler(std::uint64_t vocab_size, std::uint64_t seed,
                                     RejectionPolicy policy)
    : vocab_size_(vocab_size), policy_(policy), rng_(seed) {
    if (vocab_size == 0) throw ComputationError("vocabulary size must be >= 1");
}

TokenId DesignatedSampler::sample_token() {
    double v = static_cast<double>(vocab_size_);
    for (;;) {
        double lambda = rng_.uniform(0.0, v);
        std::uint64_t k = poisson_draw(rng_, lambda);
        if (k < vocab_size_) return static_cast<TokenId>(k);
        if (policy_ == RejectionPolicy::Clamp) return static_cast<TokenId>(vocab_size_ - 1);
    }
}

double designated_pmf(std::uint64_t k, std::uint64_t vocab_size) {
    // integral over (0,v) of lambda^k e^-lambda / k! equals the lower
    // regularized incomplete gamma P(k+1, v), i.e. P(Poisson(v) > k)
    double v = static_cast<double>(vocab_size);
    return gamma_p(static_cast<double>(k) + 1.0, v) / v;
}

ResponseSet sample_designated_set(std::uint64_t vocab_size, std::size_t length,
                                  std::size_t set_size, std::uint64_t seed,
                                  RejectionPolicy policy) {
    if (length == 0) throw ComputationError("response length must be >= 1");
    if (set_size == 0) throw ComputationError("set size must be >= 1");
    DesignatedSampler sampler(vocab_size, seed, policy);
    ResponseSet set;
    set.responses.resize(set_size);
    for (auto& resp : set.responses) {
        resp.tokens.reserve(length);
        for (std::size_t i = 0; i < length; ++i) resp.tokens.push_back(sampler.sample_token());
    }
    return set;
}

ResponseSet sample_corpus_set(const std::vector<TokenSequence>& corpus, std::size_t length,
                              std::size_t set_size, std::uint64_t seed, LengthMatch match) {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        std::size_t t = corpus[i].size();
        bool ok = (match == LengthMatch::Exact)
                      ? t == length
                      : t + 1 >= length && t <= length + 1;
        if (ok) pool.push_back(i);
    }
    if (pool.size() < set_size)
        throw ComputationError("corpus shortfall at length " + std::to_string(length) + ": need " +
                               std::to_string(set_size) + " responses, found " +
                               std::to_string(pool.size()));
    // partial Fisher-Yates
    Rng rng(seed);
    ResponseSet set;
    set.responses.reserve(set_size);
    for (std::size_t i = 0; i < set_size; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
        set.responses.push_back(corpus[pool[i]]);
    }
    return set;
}

}  // namespace ead

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ead/tokenize.hpp"

namespace ead {

// splitmix64 step; used to derive independent streams from one base seed so
// trial results do not depend on execution order.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

// Thin wrapper around mt19937_64 producing uniforms directly from raw bits;
// avoids the implementation-defined std::*_distribution adaptors so seeded
// runs are reproducible byte-for-byte.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    std::uint64_t below(std::uint64_t n);   // unbiased integer in [0, n)

  private:
    std::mt19937_64 engine_;
};

// Exact Poisson sample: sequential inversion for small means, transformed
// rejection (PTRS) for large.
std::uint64_t poisson_draw(Rng& rng, double mean);

enum class RejectionPolicy { Resample, Clamp };

// Token source with marginal P(X=k) = integral over lambda in (0,v) of
// lambda^k e^{-lambda} / (v k!), i.e. lambda ~ Uniform(0,v), k ~ Poisson(lambda).
// Draws with k >= v are resampled (default) or clamped to v-1.
class DesignatedSampler {
  public:
    DesignatedSampler(std::uint64_t vocab_size, std::uint64_t seed,
                      RejectionPolicy policy = RejectionPolicy::Resample);

    TokenId sample_token();
    std::uint64_t vocab_size() const { return vocab_size_; }

  private:
    std::uint64_t vocab_size_;
    RejectionPolicy policy_;
    Rng rng_;
};

// Untruncated marginal pmf of the designated distribution,
// P(X=k) = P(Poisson(v) > k) / v.
double designated_pmf(std::uint64_t k, std::uint64_t vocab_size);

// set_size responses of exactly `length` tokens each; deterministic in
// (vocab_size, length, set_size, seed).
ResponseSet sample_designated_set(std::uint64_t vocab_size, std::size_t length,
                                  std::size_t set_size, std::uint64_t seed,
                                  RejectionPolicy policy = RejectionPolicy::Resample);

enum class LengthMatch { Exact, Bucket };  // Bucket accepts length +/- 1

// Uniform sample without replacement among corpus responses matching the
// requested length. Throws ComputationError on shortfall, naming the length
// and the available count.
ResponseSet sample_corpus_set(const std::vector<TokenSequence>& corpus, std::size_t length,
                              std::size_t set_size, std::uint64_t seed,
                              LengthMatch match = LengthMatch::Exact);

}  // namespace ead

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ead {

using TokenId = std::uint32_t;

enum class TokenizeMode {
    Whitespace,           // split on Unicode whitespace
    LowercaseWhitespace,  // split + ASCII case fold
};

struct TokenSequence {
    std::vector<TokenId> tokens;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
};

// Maps token strings to dense integer ids. Ids are assigned in first-seen
// order; equality of ids is equality of tokens.
class TokenInterner {
  public:
    TokenId intern(std::string_view token);
    const std::string& name(TokenId id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }

  private:
    std::unordered_map<std::string, TokenId> ids_;
    std::vector<std::string> names_;
};

struct ResponseSet {
    std::vector<TokenSequence> responses;

    std::size_t size() const { return responses.size(); }
    std::uint64_t total_tokens() const;
};

// Splits UTF-8 text on Unicode whitespace. Throws IoError on malformed UTF-8.
TokenSequence tokenize(std::string_view text, TokenizeMode mode, TokenInterner& interner);

// An n-gram is the ordered tuple of its token ids.
using Ngram = std::vector<TokenId>;

// Contiguous n-grams of `seq`: max(0, t-n+1) of them. Throws ComputationError
// when n == 0.
std::vector<Ngram> ngrams(const TokenSequence& seq, std::size_t n);

struct VocabCensus {
    std::uint64_t vocab_size = 0;
    std::unordered_map<std::string, std::uint64_t> census;  // token -> frequency
};

VocabCensus count_vocab(const std::vector<std::string>& lines, TokenizeMode mode);

}  // namespace ead

#include "ead/tokenize.hpp"

#include <set>

#include "ead/errors.hpp"

namespace ead {

TokenId TokenInterner::intern(std::string_view token) {
    auto it = ids_.find(std::string(token));
    if (it != ids_.end()) return it->second;
    TokenId id = static_cast<TokenId>(names_.size());
    names_.emplace_back(token);
    ids_.emplace(names_.back(), id);
    return id;
}

std::uint64_t ResponseSet::total_tokens() const {
    std::uint64_t c = 0;
    for (const auto& r : responses) c += r.size();
    return c;
}

namespace {

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
        case 0x20: case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Decodes one UTF-8 code point starting at `pos`; advances `pos` past it.
// Rejects overlong encodings, surrogates and truncated sequences.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
    auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
    else throw IoError("invalid UTF-8 byte at offset " + std::to_string(pos));
    if (pos + len > s.size())
        throw IoError("truncated UTF-8 sequence at offset " + std::to_string(pos));
    for (int i = 1; i < len; ++i) {
        unsigned char b = byte(pos + i);
        if ((b & 0xC0) != 0x80)
            throw IoError("invalid UTF-8 continuation at offset " + std::to_string(pos + i));
        cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
        throw IoError("invalid UTF-8 code point at offset " + std::to_string(pos));
    pos += len;
    return cp;
}

}  // namespace

TokenSequence tokenize(std::string_view text, TokenizeMode mode, TokenInterner& interner) {
    TokenSequence out;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            out.tokens.push_back(interner.intern(current));
            current.clear();
        }
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t start = pos;
        char32_t cp = decode_utf8(text, pos);
        if (is_unicode_space(cp)) {
            flush();
            continue;
        }
        if (mode == TokenizeMode::LowercaseWhitespace && cp >= 'A' && cp <= 'Z')
            cp += 'a' - 'A';
        if (cp < 0x80) {
            current.push_back(static_cast<char>(cp));
        } else {
            current.append(text.substr(start, pos - start));
        }
    }
    flush();
    return out;
}

std::vector<Ngram> ngrams(const TokenSequence& seq, std::size_t n) {
    if (n == 0) throw ComputationError("n-gram order must be >= 1");
    std::vector<Ngram> out;
    if (seq.size() < n) return out;
    out.reserve(seq.size() - n + 1);
    for (std::size_t i = 0; i + n <= seq.size(); ++i)
        out.emplace_back(seq.tokens.begin() + i, seq.tokens.begin() + i + n);
    return out;
}

VocabCensus count_vocab(const std::vector<std::string>& lines, TokenizeMode mode) {
    VocabCensus result;
    TokenInterner interner;
    std::vector<std::uint64_t> counts;
    for (const auto& line : lines) {
        TokenSequence seq = tokenize(line, mode, interner);
        counts.resize(interner.size(), 0);
        for (TokenId id : seq.tokens) ++counts[id];
    }
    result.vocab_size = interner.size();
    for (TokenId id = 0; id < counts.size(); ++id)
        result.census.emplace(interner.name(id), counts[id]);
    return result;
}

}  // namespace ead

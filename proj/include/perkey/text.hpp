#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace perkey {

// Canonical text form shared by every ranker and the neural model:
// Perso-Arabic letter folding (Arabic yeh/kaf/alef-maksura to Persian forms),
// hamza/madda composition, digit folding to ASCII, diacritic and tatweel
// removal, whitespace collapse. Idempotent. ZWNJ (U+200C) is a joiner and is
// never treated as whitespace.
std::string normalize(std::string_view text);

// Whitespace split with punctuation isolated into standalone tokens.
// Expects normalized input.
std::vector<std::string> tokenize(std::string_view normalized);

std::vector<std::string> normalize_and_tokenize(std::string_view text);

// True for single-codepoint punctuation tokens (ASCII + common Persian).
bool is_punct_token(std::string_view token);

// [begin, end) token ranges delimited by sentence-final punctuation.
std::vector<std::pair<size_t, size_t>> sentence_spans(const std::vector<std::string>& tokens);

struct TokenizedDoc {
    std::vector<std::string> tokens;
    std::vector<int> ids;  // empty until encoded
    std::string source_key;
};

struct Stopwords {
    std::unordered_set<std::string> words;

    bool contains(const std::string& token) const { return words.count(token) > 0; }
    size_t size() const { return words.size(); }

    // One token per line, '#' comments allowed; tokens are normalized on load.
    static Stopwords load(const std::string& path);
    static Stopwords from_tokens(const std::vector<std::string>& tokens);
};

class Vocabulary {
public:
    static constexpr int kPad = 0;
    static constexpr int kUnk = 1;
    static constexpr int kSos = 2;
    static constexpr int kEos = 3;
    static constexpr int kNumSpecials = 4;

    // Top max_size tokens by frequency over the given token sequences
    // (training split only); frequency ties break lexicographically.
    static Vocabulary build(const std::vector<std::vector<std::string>>& docs, size_t max_size);

    int id(const std::string& token) const {
        auto it = token_to_id_.find(token);
        return it == token_to_id_.end() ? kUnk : it->second;
    }
    const std::string& token(int id) const;

    size_t size() const { return id_to_token_.size(); }
    size_t max_size() const { return max_size_; }
    uint64_t corpus_hash() const { return corpus_hash_; }

    std::vector<int> encode(const std::vector<std::string>& tokens) const;
    // Strips PAD/SOS/EOS; throws on ids outside [0, size).
    std::vector<std::string> decode(const std::vector<int>& ids) const;

    // Text format: header "#vocab max_size=<n> corpus_hash=<hex>", then one
    // token per line; line number (0-based, after the header) = id - 4.
    void save(const std::string& path) const;
    static Vocabulary load(const std::string& path);

private:
    std::unordered_map<std::string, int> token_to_id_;
    std::vector<std::string> id_to_token_;
    size_t max_size_ = 0;
    uint64_t corpus_hash_ = 0;
};

}  // namespace perkey

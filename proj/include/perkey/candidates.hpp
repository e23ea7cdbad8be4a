#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "perkey/text.hpp"

namespace perkey {

struct CandidatePhrase {
    std::vector<std::string> tokens;  // 1..max_len, no stopwords, no punctuation
    size_t first_offset = 0;          // token index of first occurrence
    size_t tf = 0;                    // occurrences within the document
    std::vector<size_t> offsets;      // all first-token offsets, ascending
};

// All contiguous 1..max_len-grams inside maximal runs of non-stopword,
// non-punctuation tokens; duplicates are merged with tf aggregated.
// Output is ordered by first_offset, then lexicographically.
std::vector<CandidatePhrase> extract_candidates(const TokenizedDoc& doc, const Stopwords& stopwords,
                                                size_t max_len = 5);

struct DocFreqTable {
    std::unordered_map<std::string, size_t> df;  // key: tokens joined by ' '
    size_t n_docs = 0;

    size_t lookup(const std::vector<std::string>& tokens) const;

    // df counts the documents whose candidate set contains the phrase.
    static DocFreqTable build(const std::vector<TokenizedDoc>& docs, const Stopwords& stopwords,
                              size_t max_len = 5);

    // TSV: first line "n_docs\t<n>", then "<phrase>\t<df>" sorted by phrase.
    void save(const std::string& path) const;
    static DocFreqTable load(const std::string& path);
};

struct ScoredPhrase {
    std::vector<std::string> tokens;
    double score = 0.0;
};

}  // namespace perkey

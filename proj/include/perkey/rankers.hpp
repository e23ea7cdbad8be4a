#pragma once

#include "perkey/candidates.hpp"

namespace perkey {

// Sorts candidates by score descending with the shared tie-break
// (earlier first_offset wins, then lexicographic) and cuts to k.
std::vector<ScoredPhrase> top_k_phrases(std::vector<CandidatePhrase> candidates,
                                        const std::vector<double>& scores, size_t k);

// Phrase-level TFIDF: tf(p, doc) * ln(n_docs / (1 + df(p))).
std::vector<ScoredPhrase> tfidf_rank(const TokenizedDoc& doc, const DocFreqTable& dft,
                                     const Stopwords& stopwords, size_t k, size_t max_len = 5);

struct KpMinerConfig {
    size_t lasf = 3;     // least allowable seen frequency
    size_t cutoff = 400; // candidates must first appear before this token index
    double alpha = 2.3;
    double sigma = 3.0;
    size_t max_len = 5;
};

// KPMiner: lasf/cutoff filtering; single words score tf*idf, multiword
// candidates score tf*ln(n_docs)*B with the document boost
// B = min(|candidates| / (alpha * |multiword candidates|), sigma).
std::vector<ScoredPhrase> kpminer_rank(const TokenizedDoc& doc, const DocFreqTable& dft,
                                       const Stopwords& stopwords, size_t k,
                                       const KpMinerConfig& cfg = {});

struct YakeConfig {
    size_t window = 1;   // co-occurrence window for the dispersion feature
    size_t max_len = 5;
};

// Per-token YAKE features on a single document. The casing feature is fixed
// to 0 (caseless script). Lower YAKE scores are better, so the returned
// ScoredPhrase.score is the negated phrase score to keep descending order.
std::vector<ScoredPhrase> yake_rank(const TokenizedDoc& doc, const Stopwords& stopwords, size_t k,
                                    const YakeConfig& cfg = {});

// Exposed for the unit tests: the combined per-token YAKE score.
std::unordered_map<std::string, double> yake_token_scores(const TokenizedDoc& doc,
                                                          const YakeConfig& cfg = {});

}  // namespace perkey

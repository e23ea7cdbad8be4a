#pragma once

#include "perkey/candidates.hpp"
#include "perkey/corpus.hpp"

namespace perkey {

struct KeaConfig {
    int bins = 5;  // equal-frequency bins per feature
    size_t max_len = 5;
};

// Naive Bayes over two candidate features: tf*idf and relative first
// occurrence, discretized by equal-frequency binning.
struct KeaModel {
    KeaConfig cfg;
    std::vector<double> tfidf_bounds;  // strictly increasing inner boundaries
    std::vector<double> pos_bounds;
    double prior_pos = 0.0;
    double prior_neg = 0.0;
    // per-class per-bin likelihoods, Laplace-smoothed
    std::vector<double> lik_tfidf_pos, lik_tfidf_neg;
    std::vector<double> lik_pos_pos, lik_pos_neg;
    DocFreqTable df;
    uint64_t df_hash = 0;

    int tfidf_bin(double v) const;
    int pos_bin(double v) const;
    // posterior probability that the candidate is a keyphrase
    double posterior(double tfidf, double rel_pos) const;

    // JSON, excluding the df table itself (referenced by hash; the table is
    // stored separately in its own TSV format).
    void save(const std::string& path) const;
    static KeaModel load(const std::string& path, const DocFreqTable& df);
};

uint64_t df_table_hash(const DocFreqTable& df);

KeaModel kea_train(const std::vector<NewsRecord>& records, const Stopwords& stopwords,
                   const KeaConfig& cfg = {});

std::vector<ScoredPhrase> kea_rank(const TokenizedDoc& doc, const KeaModel& model,
                                   const Stopwords& stopwords, size_t k);

}  // namespace perkey

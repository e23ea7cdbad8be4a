#pragma once

#include "perkey/candidates.hpp"

namespace perkey {

struct WordGraph {
    std::vector<std::string> nodes;
    std::unordered_map<std::string, int> index;
    // adjacency[u][v] = co-occurrence count; kept symmetric
    std::vector<std::unordered_map<int, double>> adjacency;
    size_t window = 10;

    double weight(const std::string& u, const std::string& v) const;
};

// Token co-occurrence graph: nodes are non-stopword, non-punctuation tokens;
// the edge (u, v) counts position pairs closer than `window` in the raw
// token stream (stopword positions still consume distance).
WordGraph build_graph(const TokenizedDoc& doc, const Stopwords& stopwords, size_t window = 10);

struct PageRankResult {
    std::vector<double> scores;  // sums to 1
    bool converged = false;
    size_t iterations = 0;
};

// Weighted PageRank over a dense adjacency; weights[u][v] is the weight of
// the edge u -> v. Dangling and isolated nodes redistribute uniformly.
// Stops when the L1 change drops below tol.
PageRankResult pagerank_dense(const std::vector<std::vector<double>>& weights,
                              double damping = 0.85, double tol = 1e-8, size_t max_iter = 200);

PageRankResult pagerank(const WordGraph& graph, double damping = 0.85, double tol = 1e-8,
                        size_t max_iter = 200);

// SingleRank: token PageRank on a window-10 graph; a candidate scores the sum
// of its member token scores.
std::vector<ScoredPhrase> singlerank(const TokenizedDoc& doc, const Stopwords& stopwords, size_t k,
                                     size_t window = 10, size_t max_len = 5);

struct TopicClusterConfig {
    double jaccard_threshold = 0.25;  // average-linkage merge threshold
    size_t max_len = 5;
};

// Average-linkage agglomerative clustering of candidates by token-set
// Jaccard similarity; returns candidate index sets partitioning [0, n).
std::vector<std::vector<size_t>> cluster_topics(const std::vector<CandidatePhrase>& candidates,
                                                const TopicClusterConfig& cfg = {});

// TopicRank: PageRank over the complete topic graph (reciprocal-distance
// weights); each of the top topics contributes its earliest candidate.
std::vector<ScoredPhrase> topicrank(const TokenizedDoc& doc, const Stopwords& stopwords, size_t k,
                                    const TopicClusterConfig& cfg = {});

struct MultipartiteConfig {
    TopicClusterConfig clustering;
    double alpha = 1.1;  // first-position boost factor
};

// MultipartiteRank: candidate graph with edges only across topics, plus a
// first-position adjustment favouring each topic's earliest candidate.
std::vector<ScoredPhrase> multipartiterank(const TokenizedDoc& doc, const Stopwords& stopwords,
                                           size_t k, const MultipartiteConfig& cfg = {});

// Exposed for tests: the adjusted multipartite adjacency matrix, rows/cols
// indexed like the candidate list.
std::vector<std::vector<double>> multipartite_weights(const std::vector<CandidatePhrase>& candidates,
                                                      const std::vector<std::vector<size_t>>& topics,
                                                      double alpha);

}  // namespace perkey

#include "perkey/graph_rank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "perkey/util.hpp"

namespace perkey {

double WordGraph::weight(const std::string& u, const std::string& v) const {
    auto iu = index.find(u), iv = index.find(v);
    if (iu == index.end() || iv == index.end()) return 0.0;
    const auto& row = adjacency[size_t(iu->second)];
    auto it = row.find(iv->second);
    return it == row.end() ? 0.0 : it->second;
}

WordGraph build_graph(const TokenizedDoc& doc, const Stopwords& stopwords, size_t window) {
    WordGraph g;
    g.window = window;
    const auto& toks = doc.tokens;
    auto is_node = [&](size_t i) {
        return !is_punct_token(toks[i]) && !stopwords.contains(toks[i]);
    };
    for (size_t i = 0; i < toks.size(); ++i) {
        if (!is_node(i) || g.index.count(toks[i])) continue;
        g.index.emplace(toks[i], int(g.nodes.size()));
        g.nodes.push_back(toks[i]);
    }
    g.adjacency.resize(g.nodes.size());
    for (size_t i = 0; i < toks.size(); ++i) {
        if (!is_node(i)) continue;
        int u = g.index.at(toks[i]);
        for (size_t j = i + 1; j < toks.size() && j - i < window; ++j) {
            if (!is_node(j)) continue;
            int v = g.index.at(toks[j]);
            if (u == v) continue;  // no self-loops
            g.adjacency[size_t(u)][v] += 1.0;
            g.adjacency[size_t(v)][u] += 1.0;
        }
    }
    return g;
}

PageRankResult pagerank_dense(const std::vector<std::vector<double>>& weights, double damping,
                              double tol, size_t max_iter) {
    size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("pagerank: empty graph");

    std::vector<double> out_weight(n, 0.0);
    for (size_t u = 0; u < n; ++u) {
        if (weights[u].size() != n) throw std::invalid_argument("pagerank: ragged weight matrix");
        for (size_t v = 0; v < n; ++v) {
            if (weights[u][v] < 0) throw std::invalid_argument("pagerank: negative edge weight");
            out_weight[u] += weights[u][v];
        }
    }

    PageRankResult result;
    result.scores.assign(n, 1.0 / double(n));
    std::vector<double> next(n);
    for (size_t iter = 0; iter < max_iter; ++iter) {
        double dangling = 0.0;
        for (size_t u = 0; u < n; ++u)
            if (out_weight[u] == 0.0) dangling += result.scores[u];

        double base = (1.0 - damping) / double(n) + damping * dangling / double(n);
        std::fill(next.begin(), next.end(), base);
        for (size_t u = 0; u < n; ++u) {
            if (out_weight[u] == 0.0) continue;
            double share = damping * result.scores[u] / out_weight[u];
            for (size_t v = 0; v < n; ++v)
                if (weights[u][v] > 0) next[v] += share * weights[u][v];
        }

        double delta = 0.0;
        for (size_t v = 0; v < n; ++v) delta += std::abs(next[v] - result.scores[v]);
        result.scores.swap(next);
        result.iterations = iter + 1;
        if (delta < tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

PageRankResult pagerank(const WordGraph& graph, double damping, double tol, size_t max_iter) {
    size_t n = graph.nodes.size();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (size_t u = 0; u < n; ++u)
        for (const auto& [v, weight] : graph.adjacency[u]) w[u][size_t(v)] = weight;
    return pagerank_dense(w, damping, tol, max_iter);
}

std::vector<ScoredPhrase> singlerank(const TokenizedDoc& doc, const Stopwords& stopwords, size_t k,
                                     size_t window, size_t max_len) {
    if (k == 0) return {};
    std::vector<CandidatePhrase> cands = extract_candidates(doc, stopwords, max_len);
    if (cands.empty()) return {};

    WordGraph g = build_graph(doc, stopwords, window);
    PageRankResult pr = pagerank(g);

    std::vector<double> scores(cands.size(), 0.0);
    for (size_t i = 0; i < cands.size(); ++i) {
        for (const auto& tok : cands[i].tokens) {
            auto it = g.index.find(tok);
            if (it != g.index.end()) scores[i] += pr.scores[size_t(it->second)];
        }
    }
    return top_k_phrases(std::move(cands), scores, k);
}

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : double(inter) / double(uni);
}

// Sum of reciprocal distances between all offset pairs of two candidates.
double reciprocal_distance(const CandidatePhrase& a, const CandidatePhrase& b) {
    double w = 0.0;
    for (size_t p : a.offsets) {
        for (size_t q : b.offsets) {
            if (p == q) continue;
            w += 1.0 / std::abs(double(p) - double(q));
        }
    }
    return w;
}

}  // namespace

std::vector<std::vector<size_t>> cluster_topics(const std::vector<CandidatePhrase>& candidates,
                                                const TopicClusterConfig& cfg) {
    size_t n = candidates.size();
    std::vector<std::set<std::string>> token_sets(n);
    for (size_t i = 0; i < n; ++i)
        token_sets[i] = {candidates[i].tokens.begin(), candidates[i].tokens.end()};

    std::vector<std::vector<size_t>> clusters(n);
    for (size_t i = 0; i < n; ++i) clusters[i] = {i};

    // average linkage over pairwise candidate similarities
    auto linkage = [&](const std::vector<size_t>& a, const std::vector<size_t>& b) {
        double sum = 0.0;
        for (size_t i : a)
            for (size_t j : b) sum += jaccard(token_sets[i], token_sets[j]);
        return sum / double(a.size() * b.size());
    };

    while (clusters.size() > 1) {
        double best = -1.0;
        size_t bi = 0, bj = 0;
        for (size_t i = 0; i < clusters.size(); ++i) {
            for (size_t j = i + 1; j < clusters.size(); ++j) {
                double sim = linkage(clusters[i], clusters[j]);
                if (sim > best) {
                    best = sim;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best < cfg.jaccard_threshold) break;
        clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(clusters[bi].begin(), clusters[bi].end());
        clusters.erase(clusters.begin() + long(bj));
    }
    return clusters;
}

std::vector<ScoredPhrase> topicrank(const TokenizedDoc& doc, const Stopwords& stopwords, size_t k,
                                    const TopicClusterConfig& cfg) {
    if (k == 0) return {};
    std::vector<CandidatePhrase> cands = extract_candidates(doc, stopwords, cfg.max_len);
    if (cands.empty()) return {};

    std::vector<std::vector<size_t>> topics = cluster_topics(cands, cfg);
    size_t t = topics.size();
    std::vector<std::vector<double>> w(t, std::vector<double>(t, 0.0));
    for (size_t i = 0; i < t; ++i) {
        for (size_t j = i + 1; j < t; ++j) {
            double sum = 0.0;
            for (size_t ci : topics[i])
                for (size_t cj : topics[j]) sum += reciprocal_distance(cands[ci], cands[cj]);
            w[i][j] = w[j][i] = sum;
        }
    }
    PageRankResult pr = pagerank_dense(w);

    // each topic emits its earliest candidate
    std::vector<CandidatePhrase> reps;
    std::vector<double> scores;
    for (size_t i = 0; i < t; ++i) {
        size_t best = topics[i][0];
        for (size_t ci : topics[i]) {
            if (cands[ci].first_offset < cands[best].first_offset ||
                (cands[ci].first_offset == cands[best].first_offset &&
                 cands[ci].tokens < cands[best].tokens))
                best = ci;
        }
        reps.push_back(cands[best]);
        scores.push_back(pr.scores[i]);
    }
    return top_k_phrases(std::move(reps), scores, k);
}

std::vector<std::vector<double>> multipartite_weights(const std::vector<CandidatePhrase>& candidates,
                                                      const std::vector<std::vector<size_t>>& topics,
                                                      double alpha) {
    size_t n = candidates.size();
    std::vector<size_t> topic_of(n, 0);
    for (size_t t = 0; t < topics.size(); ++t)
        for (size_t ci : topics[t]) topic_of[ci] = t;

    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j || topic_of[i] == topic_of[j]) continue;  // multipartite constraint
            w[i][j] = reciprocal_distance(candidates[i], candidates[j]);
        }
    }

    // boost incoming weight of each topic's earliest candidate in proportion
    // to the in-topic alternatives, scaled by alpha * e^(1/(1+offset))
    for (const auto& topic : topics) {
        if (topic.size() < 2) continue;
        size_t first = topic[0];
        for (size_t ci : topic) {
            if (candidates[ci].first_offset < candidates[first].first_offset ||
                (candidates[ci].first_offset == candidates[first].first_offset &&
                 candidates[ci].tokens < candidates[first].tokens))
                first = ci;
        }
        double position_factor = std::exp(1.0 / (1.0 + double(candidates[first].first_offset)));
        for (size_t v = 0; v < n; ++v) {
            if (topic_of[v] == topic_of[first]) continue;
            double in_topic_sum = 0.0;
            for (size_t ck : topic)
                if (ck != first) in_topic_sum += w[v][ck];
            w[v][first] += alpha * position_factor * in_topic_sum;
        }
    }
    return w;
}

std::vector<ScoredPhrase> multipartiterank(const TokenizedDoc& doc, const Stopwords& stopwords,
                                           size_t k, const MultipartiteConfig& cfg) {
    if (k == 0) return {};
    std::vector<CandidatePhrase> cands = extract_candidates(doc, stopwords, cfg.clustering.max_len);
    if (cands.empty()) return {};

    std::vector<std::vector<size_t>> topics = cluster_topics(cands, cfg.clustering);
    std::vector<std::vector<double>> w = multipartite_weights(cands, topics, cfg.alpha);
    PageRankResult pr = pagerank_dense(w);
    return top_k_phrases(std::move(cands), pr.scores, k);
}

}  // namespace perkey

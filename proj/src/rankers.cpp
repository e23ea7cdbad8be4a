#include "perkey/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "perkey/util.hpp"

namespace perkey {

std::vector<ScoredPhrase> top_k_phrases(std::vector<CandidatePhrase> candidates,
                                        const std::vector<double>& scores, size_t k) {
    if (candidates.size() != scores.size())
        throw std::invalid_argument("top_k_phrases: candidate/score size mismatch");
    std::vector<size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        if (candidates[a].first_offset != candidates[b].first_offset)
            return candidates[a].first_offset < candidates[b].first_offset;
        return candidates[a].tokens < candidates[b].tokens;
    });
    std::vector<ScoredPhrase> out;
    out.reserve(std::min(k, order.size()));
    for (size_t i = 0; i < order.size() && i < k; ++i)
        out.push_back({std::move(candidates[order[i]].tokens), scores[order[i]]});
    return out;
}

std::vector<ScoredPhrase> tfidf_rank(const TokenizedDoc& doc, const DocFreqTable& dft,
                                     const Stopwords& stopwords, size_t k, size_t max_len) {
    if (k == 0) return {};
    std::vector<CandidatePhrase> cands = extract_candidates(doc, stopwords, max_len);
    std::vector<double> scores(cands.size());
    for (size_t i = 0; i < cands.size(); ++i) {
        double idf = std::log(double(dft.n_docs) / double(1 + dft.lookup(cands[i].tokens)));
        scores[i] = double(cands[i].tf) * idf;
    }
    return top_k_phrases(std::move(cands), scores, k);
}

std::vector<ScoredPhrase> kpminer_rank(const TokenizedDoc& doc, const DocFreqTable& dft,
                                       const Stopwords& stopwords, size_t k,
                                       const KpMinerConfig& cfg) {
    if (k == 0) return {};
    std::vector<CandidatePhrase> all = extract_candidates(doc, stopwords, cfg.max_len);
    std::vector<CandidatePhrase> cands;
    for (auto& c : all) {
        if (c.tf >= cfg.lasf && c.first_offset < cfg.cutoff) cands.push_back(std::move(c));
    }

    size_t n_multi = 0;
    for (const auto& c : cands)
        if (c.tokens.size() > 1) ++n_multi;
    double boost = cfg.sigma;
    if (n_multi > 0)
        boost = std::min(double(cands.size()) / (cfg.alpha * double(n_multi)), cfg.sigma);

    std::vector<double> scores(cands.size());
    for (size_t i = 0; i < cands.size(); ++i) {
        const auto& c = cands[i];
        if (c.tokens.size() == 1) {
            double idf = std::log(double(dft.n_docs) / double(1 + dft.lookup(c.tokens)));
            scores[i] = double(c.tf) * idf;
        } else {
            // multiword phrases are assumed rare in the collection: idf at df=0
            scores[i] = double(c.tf) * std::log(double(dft.n_docs)) * boost;
        }
    }
    return top_k_phrases(std::move(cands), scores, k);
}

namespace {

struct YakeTermStats {
    size_t tf = 0;
    std::vector<size_t> sentences;              // sentence index per occurrence
    std::unordered_map<std::string, size_t> left, right;  // neighbor -> count
};

double median(std::vector<size_t> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    if (n == 0) return 0.0;
    if (n % 2 == 1) return double(v[n / 2]);
    return (double(v[n / 2 - 1]) + double(v[n / 2])) / 2.0;
}

// distinct/total neighbor ratio; no context at all counts as maximal (1).
double dispersion(const std::unordered_map<std::string, size_t>& neighbors) {
    size_t total = 0;
    for (const auto& [_, c] : neighbors) total += c;
    if (total == 0) return 1.0;
    return double(neighbors.size()) / double(total);
}

}  // namespace

std::unordered_map<std::string, double> yake_token_scores(const TokenizedDoc& doc,
                                                          const YakeConfig& cfg) {
    auto spans = sentence_spans(doc.tokens);
    std::unordered_map<std::string, YakeTermStats> stats;

    for (size_t s = 0; s < spans.size(); ++s) {
        // sentence stream without punctuation; window distances are over it
        std::vector<const std::string*> terms;
        for (size_t i = spans[s].first; i < spans[s].second; ++i)
            if (!is_punct_token(doc.tokens[i])) terms.push_back(&doc.tokens[i]);
        for (size_t i = 0; i < terms.size(); ++i) {
            YakeTermStats& st = stats[*terms[i]];
            ++st.tf;
            st.sentences.push_back(s);
            for (size_t w = 1; w <= cfg.window && w <= i; ++w) ++st.left[*terms[i - w]];
            for (size_t w = 1; w <= cfg.window && i + w < terms.size(); ++w)
                ++st.right[*terms[i + w]];
        }
    }
    if (stats.empty()) return {};

    double max_tf = 0, mean_tf = 0;
    for (const auto& [_, st] : stats) {
        max_tf = std::max(max_tf, double(st.tf));
        mean_tf += double(st.tf);
    }
    mean_tf /= double(stats.size());
    double var = 0;
    for (const auto& [_, st] : stats) var += (double(st.tf) - mean_tf) * (double(st.tf) - mean_tf);
    double std_tf = std::sqrt(var / double(stats.size()));
    double n_sentences = double(std::max<size_t>(spans.size(), 1));

    std::unordered_map<std::string, double> scores;
    for (const auto& [term, st] : stats) {
        double t_case = 0.0;  // caseless script: neutral value
        double t_pos = std::log(std::log(3.0 + median(st.sentences)));
        double t_fnorm = double(st.tf) / (mean_tf + std_tf);
        double t_rel = 1.0 + (dispersion(st.left) + dispersion(st.right)) * double(st.tf) / max_tf;
        std::vector<size_t> uniq = st.sentences;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        double t_sent = double(uniq.size()) / n_sentences;

        scores[term] = (t_rel * t_pos) / (t_case + t_fnorm / t_rel + t_sent / t_rel);
    }
    return scores;
}

std::vector<ScoredPhrase> yake_rank(const TokenizedDoc& doc, const Stopwords& stopwords, size_t k,
                                    const YakeConfig& cfg) {
    if (k == 0) return {};
    std::unordered_map<std::string, double> token_score = yake_token_scores(doc, cfg);
    std::vector<CandidatePhrase> cands = extract_candidates(doc, stopwords, cfg.max_len);

    std::vector<double> scores(cands.size());
    for (size_t i = 0; i < cands.size(); ++i) {
        double prod = 1.0, sum = 0.0;
        for (const auto& tok : cands[i].tokens) {
            double s = token_score.count(tok) ? token_score.at(tok) : 0.0;
            prod *= s;
            sum += s;
        }
        double yake = prod / (double(cands[i].tf) * (1.0 + sum));
        scores[i] = -yake;  // lower YAKE score is better
    }
    return top_k_phrases(std::move(cands), scores, k);
}

}  // namespace perkey

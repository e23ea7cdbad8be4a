#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace perkey {

using Phrase = std::vector<std::string>;

// True iff kp occurs as a contiguous token subsequence of doc_tokens.
// Both sides must come from the shared normalize/tokenize pipeline.
bool is_present(const Phrase& kp, const std::vector<std::string>& doc_tokens);

struct Prf {
    double p = 0.0;
    double r = 0.0;
    double f1 = 0.0;
};

inline double f1_of(double p, double r) { return (p + r) > 0 ? 2 * p * r / (p + r) : 0.0; }

// Exact-match precision/recall/F1 over the top-k predictions. Matching is
// one-to-one on normalized token sequences; gold is treated as a set.
// P uses denominator k when at least k predictions were supplied, otherwise
// the supplied count. Throws on empty gold.
Prf prf_at_k(const std::vector<Phrase>& preds, const std::vector<Phrase>& gold, size_t k);

// ROUGE-n over the top-k predictions: n-gram multisets are unioned across
// phrases without crossing phrase boundaries. Empty multisets yield 0.
Prf rouge_n(const std::vector<Phrase>& preds, const std::vector<Phrase>& gold, size_t n, size_t k);

struct GoldDoc {
    std::string id;
    std::vector<Phrase> gold;               // deduplicated on ingest
    std::vector<std::string> doc_tokens;    // for presence splitting
};

struct StratumMetrics {
    Prf exact;
    Prf rouge1;
    Prf rouge2;
    size_t documents = 0;  // documents contributing to this stratum
};

struct EvalReport {
    std::string method;
    std::vector<size_t> ks;
    // stratum name ("all" / "present" / "absent") -> k -> metrics
    std::map<std::string, std::map<size_t, StratumMetrics>> strata;
    size_t documents = 0;
};

// Macro-averaged evaluation of one method's ranked predictions.
// `preds` maps doc id -> ranked phrase list. Every gold doc id must be
// covered; missing ids are an error listing them. Documents whose stratum
// gold set is empty are excluded from that stratum's average. In the absent
// stratum only non-present predictions are counted.
EvalReport evaluate_corpus(const std::string& method,
                           const std::unordered_map<std::string, std::vector<Phrase>>& preds,
                           const std::vector<GoldDoc>& gold_docs,
                           const std::vector<size_t>& ks = {5, 10},
                           const std::vector<std::string>& strata = {"all", "present", "absent"});

std::string render_report_json(const std::vector<EvalReport>& reports);
std::string render_report_text(const std::vector<EvalReport>& reports);
std::vector<EvalReport> parse_report_json(const std::string& text);

}  // namespace perkey

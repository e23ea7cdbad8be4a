#include "perkey/eval.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "perkey/util.hpp"

namespace perkey {

namespace {

using nlohmann::json;

std::vector<Phrase> dedup_phrases(const std::vector<Phrase>& phrases) {
    std::vector<Phrase> out;
    std::set<Phrase> seen;
    for (const auto& p : phrases)
        if (seen.insert(p).second) out.push_back(p);
    return out;
}

std::map<std::string, size_t> ngram_multiset(const std::vector<Phrase>& phrases, size_t n,
                                             size_t limit) {
    std::map<std::string, size_t> grams;
    size_t used = 0;
    for (const auto& phrase : phrases) {
        if (used++ == limit) break;
        if (phrase.size() < n) continue;
        for (size_t i = 0; i + n <= phrase.size(); ++i) {
            std::string key;
            for (size_t j = 0; j < n; ++j) {
                if (j) key += '\x1f';
                key += phrase[i + j];
            }
            ++grams[key];
        }
    }
    return grams;
}

size_t multiset_total(const std::map<std::string, size_t>& m) {
    size_t n = 0;
    for (const auto& [_, c] : m) n += c;
    return n;
}

size_t multiset_overlap(const std::map<std::string, size_t>& a,
                        const std::map<std::string, size_t>& b) {
    size_t n = 0;
    for (const auto& [key, c] : a) {
        auto it = b.find(key);
        if (it != b.end()) n += std::min(c, it->second);
    }
    return n;
}

void accumulate(Prf& acc, const Prf& x) {
    acc.p += x.p;
    acc.r += x.r;
    acc.f1 += x.f1;
}

void scale(Prf& acc, double s) {
    acc.p *= s;
    acc.r *= s;
    acc.f1 *= s;
}

}  // namespace

bool is_present(const Phrase& kp, const std::vector<std::string>& doc_tokens) {
    if (kp.empty() || kp.size() > doc_tokens.size()) return false;
    for (size_t i = 0; i + kp.size() <= doc_tokens.size(); ++i) {
        bool match = true;
        for (size_t j = 0; j < kp.size(); ++j) {
            if (doc_tokens[i + j] != kp[j]) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

Prf prf_at_k(const std::vector<Phrase>& preds, const std::vector<Phrase>& gold, size_t k) {
    if (gold.empty()) throw std::invalid_argument("prf_at_k: empty gold set");
    std::set<Phrase> gold_set(gold.begin(), gold.end());

    size_t cut = std::min(k, preds.size());
    std::set<Phrase> seen;  // one-to-one: a prediction can claim a gold phrase once
    size_t matches = 0;
    for (size_t i = 0; i < cut; ++i) {
        if (gold_set.count(preds[i]) && seen.insert(preds[i]).second) ++matches;
    }

    Prf out;
    size_t denom = preds.size() >= k ? k : preds.size();
    out.p = denom ? double(matches) / double(denom) : 0.0;
    out.r = double(matches) / double(gold_set.size());
    out.f1 = f1_of(out.p, out.r);
    return out;
}

Prf rouge_n(const std::vector<Phrase>& preds, const std::vector<Phrase>& gold, size_t n,
            size_t k) {
    auto cand = ngram_multiset(preds, n, k);
    auto ref = ngram_multiset(gold, n, gold.size());
    size_t overlap = multiset_overlap(cand, ref);
    size_t n_cand = multiset_total(cand);
    size_t n_ref = multiset_total(ref);

    Prf out;
    out.p = n_cand ? double(overlap) / double(n_cand) : 0.0;
    out.r = n_ref ? double(overlap) / double(n_ref) : 0.0;
    out.f1 = f1_of(out.p, out.r);
    return out;
}

EvalReport evaluate_corpus(const std::string& method,
                           const std::unordered_map<std::string, std::vector<Phrase>>& preds,
                           const std::vector<GoldDoc>& gold_docs,
                           const std::vector<size_t>& ks,
                           const std::vector<std::string>& strata) {
    std::vector<std::string> missing;
    for (const auto& doc : gold_docs)
        if (!preds.count(doc.id)) missing.push_back(doc.id);
    if (!missing.empty()) {
        std::string msg = "evaluate_corpus: no predictions for " +
                          std::to_string(missing.size()) + " document(s):";
        for (size_t i = 0; i < missing.size() && i < 10; ++i) msg += " " + missing[i];
        throw std::runtime_error(msg);
    }

    EvalReport report;
    report.method = method;
    report.ks = ks;
    report.documents = gold_docs.size();

    for (const auto& stratum : strata) {
        for (size_t k : ks) report.strata[stratum][k] = StratumMetrics{};
    }

    for (const auto& doc : gold_docs) {
        const std::vector<Phrase>& ranked = preds.at(doc.id);
        std::vector<Phrase> gold_all = dedup_phrases(doc.gold);
        if (gold_all.empty()) continue;

        for (const auto& stratum : strata) {
            std::vector<Phrase> gold_sub;
            std::vector<Phrase> pred_sub;
            if (stratum == "all") {
                gold_sub = gold_all;
                pred_sub = ranked;
            } else if (stratum == "present") {
                for (const auto& g : gold_all)
                    if (is_present(g, doc.doc_tokens)) gold_sub.push_back(g);
                pred_sub = ranked;
            } else if (stratum == "absent") {
                for (const auto& g : gold_all)
                    if (!is_present(g, doc.doc_tokens)) gold_sub.push_back(g);
                for (const auto& p : ranked)
                    if (!is_present(p, doc.doc_tokens)) pred_sub.push_back(p);
            } else {
                throw std::invalid_argument("unknown stratum: " + stratum);
            }
            if (gold_sub.empty()) continue;  // excluded from this stratum's average

            for (size_t k : ks) {
                StratumMetrics& m = report.strata[stratum][k];
                accumulate(m.exact, prf_at_k(pred_sub, gold_sub, k));
                accumulate(m.rouge1, rouge_n(pred_sub, gold_sub, 1, k));
                accumulate(m.rouge2, rouge_n(pred_sub, gold_sub, 2, k));
                ++m.documents;
            }
        }
    }

    for (auto& [_, per_k] : report.strata) {
        for (auto& [__, m] : per_k) {
            if (m.documents == 0) continue;
            double s = 1.0 / double(m.documents);
            scale(m.exact, s);
            scale(m.rouge1, s);
            scale(m.rouge2, s);
        }
    }
    return report;
}

namespace {

json prf_to_json(const Prf& v) { return {{"p", v.p}, {"r", v.r}, {"f1", v.f1}}; }

Prf prf_from_json(const json& j) {
    Prf v;
    v.p = j.at("p").get<double>();
    v.r = j.at("r").get<double>();
    v.f1 = j.at("f1").get<double>();
    return v;
}

}  // namespace

std::string render_report_json(const std::vector<EvalReport>& reports) {
    json out = json::array();
    for (const auto& rep : reports) {
        json j;
        j["method"] = rep.method;
        j["ks"] = rep.ks;
        j["documents"] = rep.documents;
        json strata = json::object();
        for (const auto& [name, per_k] : rep.strata) {
            json ks = json::object();
            for (const auto& [k, m] : per_k) {
                ks[std::to_string(k)] = {{"exact", prf_to_json(m.exact)},
                                         {"rouge1", prf_to_json(m.rouge1)},
                                         {"rouge2", prf_to_json(m.rouge2)},
                                         {"documents", m.documents}};
            }
            strata[name] = ks;
        }
        j["strata"] = strata;
        out.push_back(j);
    }
    return out.dump(2);
}

std::vector<EvalReport> parse_report_json(const std::string& text) {
    json arr = json::parse(text);
    std::vector<EvalReport> reports;
    for (const auto& j : arr) {
        EvalReport rep;
        rep.method = j.at("method").get<std::string>();
        rep.ks = j.at("ks").get<std::vector<size_t>>();
        rep.documents = j.at("documents").get<size_t>();
        for (const auto& [name, ks] : j.at("strata").items()) {
            for (const auto& [kstr, m] : ks.items()) {
                StratumMetrics sm;
                sm.exact = prf_from_json(m.at("exact"));
                sm.rouge1 = prf_from_json(m.at("rouge1"));
                sm.rouge2 = prf_from_json(m.at("rouge2"));
                sm.documents = m.at("documents").get<size_t>();
                rep.strata[name][std::stoull(kstr)] = sm;
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::string render_report_text(const std::vector<EvalReport>& reports) {
    std::ostringstream out;
    if (reports.empty()) return "(no methods)\n";

    std::vector<std::string> strata;
    for (const auto& [name, _] : reports.front().strata) strata.push_back(name);
    // fixed display order
    std::sort(strata.begin(), strata.end(), [](const std::string& a, const std::string& b) {
        auto rank = [](const std::string& s) {
            if (s == "all") return 0;
            if (s == "present") return 1;
            if (s == "absent") return 2;
            return 3;
        };
        return rank(a) < rank(b);
    });
    const std::vector<size_t>& ks = reports.front().ks;

    auto table = [&](const std::string& title,
                     const std::function<const Prf&(const StratumMetrics&)>& pick,
                     const std::string& stratum) {
        out << "== " << title << ", stratum=" << stratum << " ==\n";
        char buf[64];
        snprintf(buf, sizeof buf, "%-20s", "method");
        out << buf;
        for (size_t k : ks) {
            for (const char* m : {"P", "R", "F1"}) {
                snprintf(buf, sizeof buf, "%9s@%zu", m, k);
                out << buf;
            }
        }
        out << "\n";
        for (const auto& rep : reports) {
            snprintf(buf, sizeof buf, "%-20s", rep.method.c_str());
            out << buf;
            auto it = rep.strata.find(stratum);
            for (size_t k : ks) {
                if (it == rep.strata.end() || !it->second.count(k)) {
                    out << "        -        -        -";
                    continue;
                }
                const Prf& v = pick(it->second.at(k));
                snprintf(buf, sizeof buf, " %10.4f %10.4f %10.4f", v.p, v.r, v.f1);
                out << buf;
            }
            out << "\n";
        }
        out << "\n";
    };

    for (const auto& stratum : strata)
        table("exact match", [](const StratumMetrics& m) -> const Prf& { return m.exact; }, stratum);
    for (const auto& stratum : strata) {
        table("ROUGE-1", [](const StratumMetrics& m) -> const Prf& { return m.rouge1; }, stratum);
        table("ROUGE-2", [](const StratumMetrics& m) -> const Prf& { return m.rouge2; }, stratum);
    }
    return out.str();
}

}  // namespace perkey

#include "perkey/kea.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "perkey/eval.hpp"
#include "perkey/util.hpp"

namespace perkey {

namespace {

using nlohmann::json;

// Inner boundaries of `bins` equal-frequency bins; duplicates collapse, so
// fewer bins can come back for skewed features.
std::vector<double> equal_frequency_bounds(std::vector<double> values, int bins) {
    std::sort(values.begin(), values.end());
    std::vector<double> bounds;
    for (int b = 1; b < bins; ++b) {
        size_t idx = values.size() * size_t(b) / size_t(bins);
        if (idx >= values.size()) break;
        double v = values[idx];
        if (bounds.empty() || v > bounds.back()) bounds.push_back(v);
    }
    return bounds;
}

int bin_of(const std::vector<double>& bounds, double v) {
    int b = 0;
    while (b < int(bounds.size()) && v >= bounds[size_t(b)]) ++b;
    return b;
}

std::vector<double> smoothed_likelihoods(const std::vector<size_t>& counts, size_t class_total) {
    std::vector<double> lik(counts.size());
    double denom = double(class_total) + double(counts.size());  // add-1 smoothing
    for (size_t i = 0; i < counts.size(); ++i) lik[i] = (double(counts[i]) + 1.0) / denom;
    return lik;
}

struct LabeledFeatures {
    double tfidf;
    double rel_pos;
    bool positive;
};

std::vector<LabeledFeatures> featurize(const NewsRecord& rec, const DocFreqTable& df,
                                       const Stopwords& stopwords, size_t max_len,
                                       std::vector<CandidatePhrase>* out_cands = nullptr) {
    TokenizedDoc doc = tokenize_record(rec);
    std::vector<CandidatePhrase> cands = extract_candidates(doc, stopwords, max_len);
    std::set<std::vector<std::string>> gold;
    for (const auto& kp : rec.keyphrases) gold.insert(normalize_and_tokenize(kp));

    std::vector<LabeledFeatures> out;
    out.reserve(cands.size());
    double doc_len = double(std::max<size_t>(doc.tokens.size(), 1));
    for (const auto& c : cands) {
        LabeledFeatures f;
        f.tfidf = double(c.tf) * std::log(double(df.n_docs) / double(1 + df.lookup(c.tokens)));
        f.rel_pos = double(c.first_offset) / doc_len;
        f.positive = gold.count(c.tokens) > 0;
        out.push_back(f);
    }
    if (out_cands) *out_cands = std::move(cands);
    return out;
}

}  // namespace

int KeaModel::tfidf_bin(double v) const { return bin_of(tfidf_bounds, v); }
int KeaModel::pos_bin(double v) const { return bin_of(pos_bounds, v); }

double KeaModel::posterior(double tfidf, double rel_pos) const {
    size_t bt = size_t(tfidf_bin(tfidf));
    size_t bp = size_t(pos_bin(rel_pos));
    double pos = prior_pos * lik_tfidf_pos[bt] * lik_pos_pos[bp];
    double neg = prior_neg * lik_tfidf_neg[bt] * lik_pos_neg[bp];
    return pos / (pos + neg);
}

uint64_t df_table_hash(const DocFreqTable& df) {
    std::vector<std::pair<std::string, size_t>> rows(df.df.begin(), df.df.end());
    std::sort(rows.begin(), rows.end());
    uint64_t h = fnv1a("n_docs=" + std::to_string(df.n_docs));
    for (const auto& [phrase, count] : rows) h = fnv1a(phrase + "\t" + std::to_string(count), h);
    return h;
}

KeaModel kea_train(const std::vector<NewsRecord>& records, const Stopwords& stopwords,
                   const KeaConfig& cfg) {
    if (records.size() < 2) throw std::runtime_error("kea_train: need at least 2 records");

    std::vector<TokenizedDoc> docs;
    docs.reserve(records.size());
    for (size_t i = 0; i < records.size(); ++i)
        docs.push_back(tokenize_record(records[i], "rec" + std::to_string(i)));

    KeaModel model;
    model.cfg = cfg;
    model.df = DocFreqTable::build(docs, stopwords, cfg.max_len);
    model.df_hash = df_table_hash(model.df);

    std::vector<LabeledFeatures> all;
    for (const auto& rec : records) {
        auto feats = featurize(rec, model.df, stopwords, cfg.max_len);
        all.insert(all.end(), feats.begin(), feats.end());
    }

    size_t n_pos = 0;
    for (const auto& f : all) n_pos += f.positive ? 1 : 0;
    if (n_pos == 0)
        throw std::runtime_error("kea_train: no candidate matches any gold keyphrase");
    size_t n_neg = all.size() - n_pos;

    std::vector<double> tfidf_vals, pos_vals;
    for (const auto& f : all) {
        tfidf_vals.push_back(f.tfidf);
        pos_vals.push_back(f.rel_pos);
    }
    model.tfidf_bounds = equal_frequency_bounds(std::move(tfidf_vals), cfg.bins);
    model.pos_bounds = equal_frequency_bounds(std::move(pos_vals), cfg.bins);

    size_t nbt = model.tfidf_bounds.size() + 1;
    size_t nbp = model.pos_bounds.size() + 1;
    std::vector<size_t> ct_pos(nbt, 0), ct_neg(nbt, 0), cp_pos(nbp, 0), cp_neg(nbp, 0);
    for (const auto& f : all) {
        size_t bt = size_t(bin_of(model.tfidf_bounds, f.tfidf));
        size_t bp = size_t(bin_of(model.pos_bounds, f.rel_pos));
        if (f.positive) {
            ++ct_pos[bt];
            ++cp_pos[bp];
        } else {
            ++ct_neg[bt];
            ++cp_neg[bp];
        }
    }

    model.prior_pos = double(n_pos) / double(all.size());
    model.prior_neg = double(n_neg) / double(all.size());
    model.lik_tfidf_pos = smoothed_likelihoods(ct_pos, n_pos);
    model.lik_tfidf_neg = smoothed_likelihoods(ct_neg, n_neg);
    model.lik_pos_pos = smoothed_likelihoods(cp_pos, n_pos);
    model.lik_pos_neg = smoothed_likelihoods(cp_neg, n_neg);
    return model;
}

std::vector<ScoredPhrase> kea_rank(const TokenizedDoc& doc, const KeaModel& model,
                                   const Stopwords& stopwords, size_t k) {
    if (k == 0) return {};
    std::vector<CandidatePhrase> cands = extract_candidates(doc, stopwords, model.cfg.max_len);
    std::vector<double> scores(cands.size());
    double doc_len = double(std::max<size_t>(doc.tokens.size(), 1));
    for (size_t i = 0; i < cands.size(); ++i) {
        double tfidf = double(cands[i].tf) *
                       std::log(double(model.df.n_docs) / double(1 + model.df.lookup(cands[i].tokens)));
        double rel_pos = double(cands[i].first_offset) / doc_len;
        scores[i] = model.posterior(tfidf, rel_pos);
    }
    return top_k_phrases(std::move(cands), scores, k);
}

void KeaModel::save(const std::string& path) const {
    json j;
    j["format"] = "perkey-kea";
    j["version"] = 1;
    j["bins"] = cfg.bins;
    j["max_len"] = cfg.max_len;
    j["tfidf_bounds"] = tfidf_bounds;
    j["pos_bounds"] = pos_bounds;
    j["prior_pos"] = prior_pos;
    j["prior_neg"] = prior_neg;
    j["lik_tfidf_pos"] = lik_tfidf_pos;
    j["lik_tfidf_neg"] = lik_tfidf_neg;
    j["lik_pos_pos"] = lik_pos_pos;
    j["lik_pos_neg"] = lik_pos_neg;
    char buf[32];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(df_hash));
    j["df_hash"] = buf;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write KEA model: " + path);
    out << j.dump(2) << "\n";
}

KeaModel KeaModel::load(const std::string& path, const DocFreqTable& df) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open KEA model: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": invalid KEA model JSON: " + e.what());
    }
    if (j.value("format", "") != "perkey-kea")
        throw std::runtime_error(path + ": not a KEA model file");

    KeaModel m;
    m.cfg.bins = j.at("bins").get<int>();
    m.cfg.max_len = j.at("max_len").get<size_t>();
    m.tfidf_bounds = j.at("tfidf_bounds").get<std::vector<double>>();
    m.pos_bounds = j.at("pos_bounds").get<std::vector<double>>();
    m.prior_pos = j.at("prior_pos").get<double>();
    m.prior_neg = j.at("prior_neg").get<double>();
    m.lik_tfidf_pos = j.at("lik_tfidf_pos").get<std::vector<double>>();
    m.lik_tfidf_neg = j.at("lik_tfidf_neg").get<std::vector<double>>();
    m.lik_pos_pos = j.at("lik_pos_pos").get<std::vector<double>>();
    m.lik_pos_neg = j.at("lik_pos_neg").get<std::vector<double>>();
    m.df_hash = std::stoull(j.at("df_hash").get<std::string>(), nullptr, 16);

    uint64_t actual = df_table_hash(df);
    if (actual != m.df_hash)
        throw std::runtime_error(path + ": df table hash mismatch (model was trained with a "
                                        "different document-frequency table)");
    m.df = df;
    return m;
}

}  // namespace perkey

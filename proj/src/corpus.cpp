#include "perkey/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "perkey/eval.hpp"
#include "perkey/util.hpp"

namespace perkey {

namespace {

using nlohmann::json;

bool parse_record(const json& j, NewsRecord& rec) {
    if (!j.is_object()) return false;
    auto get_str = [&](const char* key, std::string& out, bool required) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_string()) return !required;
        out = it->get<std::string>();
        return true;
    };
    if (!get_str("title", rec.title, true)) return false;
    if (!get_str("body", rec.body, true)) return false;
    get_str("summary", rec.summary, false);
    get_str("category", rec.category, false);
    get_str("url", rec.url, false);

    auto it = j.find("keyphrases");
    if (it == j.end() || !it->is_array() || it->empty()) return false;
    for (const auto& kp : *it) {
        if (!kp.is_string()) return false;
        std::string s = kp.get<std::string>();
        if (normalize(s).empty()) return false;
        rec.keyphrases.push_back(std::move(s));
    }
    // record invariants: non-empty title/body after normalization
    return !normalize(rec.title).empty() && !normalize(rec.body).empty();
}

json record_to_json(const NewsRecord& rec) {
    json j;
    j["title"] = rec.title;
    j["body"] = rec.body;
    j["summary"] = rec.summary;
    j["keyphrases"] = rec.keyphrases;
    j["category"] = rec.category;
    j["url"] = rec.url;
    return j;
}

std::string body_bucket(size_t tokens) {
    if (tokens < 40) return "<40";
    if (tokens < 100) return "40-100";
    if (tokens < 200) return "100-200";
    if (tokens < 300) return "200-300";
    if (tokens < 400) return "300-400";
    if (tokens <= 500) return "400-500";
    return ">500";
}

std::string kp_count_bucket(size_t n) {
    if (n < 3) return "<3";
    if (n <= 5) return std::to_string(n);
    return "6+";
}

std::string kp_token_bucket(size_t n) {
    if (n <= 5) return std::to_string(n);
    return "6+";
}

const std::vector<std::string> kBodyOrder = {"<40",     "40-100",  "100-200", "200-300",
                                             "300-400", "400-500", ">500"};
const std::vector<std::string> kKpCountOrder = {"<3", "3", "4", "5", "6+"};
const std::vector<std::string> kKpTokenOrder = {"1", "2", "3", "4", "5", "6+"};

void render_table(std::ostringstream& out, const std::string& title, const std::string& col0,
                  const std::vector<std::string>& order,
                  const std::map<std::string, size_t>& counts, size_t total) {
    out << title << "\n";
    char line[128];
    snprintf(line, sizeof line, "  %-14s %14s %12s\n", col0.c_str(), "count", "% of total");
    out << line;
    for (const auto& key : order) {
        auto it = counts.find(key);
        if (it == counts.end()) continue;
        double pct = total ? 100.0 * double(it->second) / double(total) : 0.0;
        snprintf(line, sizeof line, "  %-14s %14zu %11.2f%%\n", key.c_str(), it->second, pct);
        out << line;
    }
    snprintf(line, sizeof line, "  %-14s %14zu %11.2f%%\n", "total", total, total ? 100.0 : 0.0);
    out << line << "\n";
}

}  // namespace

LoadResult load_records(const std::string& path, bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);

    LoadResult result;
    auto consume = [&](const json& j, size_t where) {
        NewsRecord rec;
        if (parse_record(j, rec)) {
            result.records.push_back(std::move(rec));
        } else if (strict) {
            throw std::runtime_error(path + ": malformed record at entry " + std::to_string(where));
        } else {
            ++result.rejected;
        }
    };

    // Peek past whitespace: '[' means one JSON array, anything else JSONL.
    int c;
    while ((c = in.peek()) != EOF && (c == ' ' || c == '\n' || c == '\r' || c == '\t')) in.get();
    if (c == '[') {
        json arr;
        try {
            in >> arr;
        } catch (const json::exception& e) {
            throw std::runtime_error(path + ": invalid JSON array: " + e.what());
        }
        size_t i = 0;
        for (const auto& j : arr) consume(j, i++);
        return result;
    }

    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            if (strict) throw std::runtime_error(path + ": invalid JSON at line " + std::to_string(lineno));
            ++result.rejected;
            continue;
        }
        consume(j, lineno);
    }
    return result;
}

void write_records(const std::vector<NewsRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write corpus file: " + path);
    for (const auto& rec : records) out << record_to_json(rec).dump() << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<NewsRecord> filter_records(const std::vector<NewsRecord>& records,
                                       const FilterConfig& cfg) {
    std::vector<NewsRecord> kept;
    for (const auto& rec : records) {
        if (rec.keyphrases.size() < size_t(cfg.min_keyphrases)) continue;
        size_t body_tokens = normalize_and_tokenize(rec.body).size();
        if (body_tokens < size_t(cfg.body_min_tokens) || body_tokens > size_t(cfg.body_max_tokens))
            continue;
        bool kp_ok = true;
        for (const auto& kp : rec.keyphrases) {
            size_t n = normalize_and_tokenize(kp).size();
            if (n == 0 || n > size_t(cfg.max_kp_tokens)) {
                kp_ok = false;
                break;
            }
        }
        if (kp_ok) kept.push_back(rec);
    }
    return kept;
}

DatasetSplit split_dataset(std::vector<NewsRecord> records, uint64_t seed,
                           const SplitQuotas& quotas) {
    size_t need = quotas.train + quotas.valid + quotas.test;
    if (records.size() < need) {
        throw std::runtime_error("split_dataset: need " + std::to_string(need) + " records, have " +
                                 std::to_string(records.size()) + " (short by " +
                                 std::to_string(need - records.size()) + ")");
    }
    Rng rng(seed);
    shuffle(records, rng);

    DatasetSplit split;
    split.seed = seed;
    auto cut = records.begin();
    split.train.assign(cut, cut + quotas.train);
    cut += quotas.train;
    split.valid.assign(cut, cut + quotas.valid);
    cut += quotas.valid;
    split.test.assign(cut, cut + quotas.test);
    return split;
}

TokenizedDoc tokenize_record(const NewsRecord& rec, const std::string& fallback_key) {
    TokenizedDoc doc;
    doc.tokens = normalize_and_tokenize(rec.title);
    std::vector<std::string> body = normalize_and_tokenize(rec.body);
    doc.tokens.insert(doc.tokens.end(), body.begin(), body.end());
    doc.source_key = rec.url.empty() ? fallback_key : rec.url;
    return doc;
}

std::vector<TrainingPair> flatten_pairs(const std::vector<NewsRecord>& records) {
    std::vector<TrainingPair> pairs;
    size_t idx = 0;
    for (const auto& rec : records) {
        TokenizedDoc source = tokenize_record(rec, "rec" + std::to_string(idx));
        for (const auto& kp : rec.keyphrases) {
            TrainingPair pair;
            pair.source = source;
            pair.target_tokens = normalize_and_tokenize(kp);
            pairs.push_back(std::move(pair));
        }
        ++idx;
    }
    return pairs;
}

CorpusStats compute_stats(const std::vector<NewsRecord>& records, bool body_only) {
    CorpusStats stats;
    stats.total_articles = records.size();
    for (const auto& rec : records) {
        size_t body_tokens = normalize_and_tokenize(rec.body).size();
        ++stats.articles_by_body_tokens[body_bucket(body_tokens)];
        ++stats.articles_by_keyphrase_count[kp_count_bucket(rec.keyphrases.size())];

        std::vector<std::string> doc_tokens;
        if (body_only) {
            doc_tokens = normalize_and_tokenize(rec.body);
        } else {
            doc_tokens = tokenize_record(rec).tokens;
        }
        for (const auto& kp : rec.keyphrases) {
            std::vector<std::string> kp_tokens = normalize_and_tokenize(kp);
            ++stats.keyphrases_by_token_count[kp_token_bucket(kp_tokens.size())];
            ++stats.total_keyphrases;
            if (is_present(kp_tokens, doc_tokens))
                ++stats.present_count;
            else
                ++stats.absent_count;
        }
    }
    return stats;
}

std::string stats_to_json(const CorpusStats& stats) {
    json j;
    j["articles_by_body_tokens"] = stats.articles_by_body_tokens;
    j["articles_by_keyphrase_count"] = stats.articles_by_keyphrase_count;
    j["keyphrases_by_token_count"] = stats.keyphrases_by_token_count;
    j["presence"] = {{"present", stats.present_count},
                     {"absent", stats.absent_count},
                     {"total", stats.present_count + stats.absent_count}};
    j["total_articles"] = stats.total_articles;
    j["total_keyphrases"] = stats.total_keyphrases;
    return j.dump(2);
}

std::string stats_to_text(const CorpusStats& stats) {
    std::ostringstream out;
    render_table(out, "Articles by body token count", "# of tokens", kBodyOrder,
                 stats.articles_by_body_tokens, stats.total_articles);
    render_table(out, "Articles by keyphrase count", "# keyphrases", kKpCountOrder,
                 stats.articles_by_keyphrase_count, stats.total_articles);
    render_table(out, "Keyphrases by token count", "# of tokens", kKpTokenOrder,
                 stats.keyphrases_by_token_count, stats.total_keyphrases);

    out << "Present / absent keyphrases\n";
    char line[128];
    size_t total = stats.present_count + stats.absent_count;
    auto row = [&](const char* name, size_t n) {
        double pct = total ? 100.0 * double(n) / double(total) : 0.0;
        snprintf(line, sizeof line, "  %-14s %14zu %11.2f%%\n", name, n, pct);
        out << line;
    };
    row("present", stats.present_count);
    row("absent", stats.absent_count);
    row("total", total);
    return out.str();
}

}  // namespace perkey

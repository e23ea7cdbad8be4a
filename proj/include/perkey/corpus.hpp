#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "perkey/text.hpp"

namespace perkey {

struct NewsRecord {
    std::string title;
    std::string body;
    std::string summary;  // kept for round-tripping, unused downstream
    std::vector<std::string> keyphrases;
    std::string category;
    std::string url;
};

struct LoadResult {
    std::vector<NewsRecord> records;
    size_t rejected = 0;
};

// Reads JSON Lines (canonical) or a single JSON array of records.
// Lenient mode skips malformed entries and counts them; strict mode throws.
LoadResult load_records(const std::string& path, bool strict = false);

void write_records(const std::vector<NewsRecord>& records, const std::string& path);

struct FilterConfig {
    int min_keyphrases = 3;
    int max_kp_tokens = 7;
    int body_min_tokens = 40;
    int body_max_tokens = 500;
};

std::vector<NewsRecord> filter_records(const std::vector<NewsRecord>& records,
                                       const FilterConfig& cfg = {});

struct SplitQuotas {
    size_t train = 345645;
    size_t valid = 25000;
    size_t test = 25000;
};

struct DatasetSplit {
    std::vector<NewsRecord> train;
    std::vector<NewsRecord> valid;
    std::vector<NewsRecord> test;
    uint64_t seed = 0;
};

// Seeded Fisher-Yates shuffle (see util.hpp Rng), then cut train/valid/test.
// Throws when quotas exceed the record count, naming the shortfall.
DatasetSplit split_dataset(std::vector<NewsRecord> records, uint64_t seed,
                           const SplitQuotas& quotas = {});

struct TrainingPair {
    TokenizedDoc source;                     // title ++ body
    std::vector<std::string> target_tokens;  // one keyphrase
};

// One pair per keyphrase; pairs of a record are adjacent and share the source.
std::vector<TrainingPair> flatten_pairs(const std::vector<NewsRecord>& records);

// title ++ body, normalized and tokenized; source_key = url (or given fallback).
TokenizedDoc tokenize_record(const NewsRecord& rec, const std::string& fallback_key = "");

struct CorpusStats {
    // Ordered maps so rendering and serialization are deterministic.
    std::map<std::string, size_t> articles_by_body_tokens;    // 40-100 .. 400-500 (+ <40 / >500)
    std::map<std::string, size_t> articles_by_keyphrase_count;  // 3,4,5,6+ (+ <3)
    std::map<std::string, size_t> keyphrases_by_token_count;  // 1..5,6+
    size_t present_count = 0;
    size_t absent_count = 0;
    size_t total_articles = 0;
    size_t total_keyphrases = 0;
};

// Presence is checked against title ++ body by default (the model input);
// body_only switches to the body alone.
CorpusStats compute_stats(const std::vector<NewsRecord>& records, bool body_only = false);

std::string stats_to_json(const CorpusStats& stats);
std::string stats_to_text(const CorpusStats& stats);

}  // namespace perkey

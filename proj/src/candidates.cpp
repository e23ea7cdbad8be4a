#include "perkey/candidates.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "perkey/util.hpp"

namespace perkey {

std::vector<CandidatePhrase> extract_candidates(const TokenizedDoc& doc, const Stopwords& stopwords,
                                                size_t max_len) {
    const auto& toks = doc.tokens;
    // phrase key -> candidate, insertion keyed for dedup
    std::map<std::string, CandidatePhrase> seen;

    size_t i = 0;
    while (i < toks.size()) {
        if (is_punct_token(toks[i]) || stopwords.contains(toks[i])) {
            ++i;
            continue;
        }
        size_t run_end = i;
        while (run_end < toks.size() && !is_punct_token(toks[run_end]) &&
               !stopwords.contains(toks[run_end]))
            ++run_end;

        for (size_t a = i; a < run_end; ++a) {
            for (size_t len = 1; len <= max_len && a + len <= run_end; ++len) {
                std::vector<std::string> phrase(toks.begin() + a, toks.begin() + a + len);
                std::string key = join_tokens(phrase);
                auto it = seen.find(key);
                if (it == seen.end()) {
                    CandidatePhrase c;
                    c.tokens = std::move(phrase);
                    c.first_offset = a;
                    c.tf = 1;
                    c.offsets = {a};
                    seen.emplace(std::move(key), std::move(c));
                } else {
                    ++it->second.tf;
                    it->second.offsets.push_back(a);
                }
            }
        }
        i = run_end;
    }

    std::vector<CandidatePhrase> out;
    out.reserve(seen.size());
    for (auto& [_, c] : seen) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(), [](const CandidatePhrase& a, const CandidatePhrase& b) {
        if (a.first_offset != b.first_offset) return a.first_offset < b.first_offset;
        return a.tokens < b.tokens;
    });
    return out;
}

size_t DocFreqTable::lookup(const std::vector<std::string>& tokens) const {
    auto it = df.find(join_tokens(tokens));
    return it == df.end() ? 0 : it->second;
}

DocFreqTable DocFreqTable::build(const std::vector<TokenizedDoc>& docs, const Stopwords& stopwords,
                                 size_t max_len) {
    DocFreqTable table;
    table.n_docs = docs.size();
    for (const auto& doc : docs) {
        for (const auto& cand : extract_candidates(doc, stopwords, max_len))
            ++table.df[join_tokens(cand.tokens)];
    }
    return table;
}

void DocFreqTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write df table: " + path);
    out << "n_docs\t" << n_docs << "\n";
    std::vector<std::pair<std::string, size_t>> rows(df.begin(), df.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [phrase, count] : rows) out << phrase << "\t" << count << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

DocFreqTable DocFreqTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open df table: " + path);
    DocFreqTable table;
    std::string line;
    if (!std::getline(in, line) || line.rfind("n_docs\t", 0) != 0)
        throw std::runtime_error("not a df table: " + path);
    table.n_docs = std::stoull(line.substr(7));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.rfind('\t');
        if (tab == std::string::npos) throw std::runtime_error("bad df row in " + path);
        table.df.emplace(line.substr(0, tab), std::stoull(line.substr(tab + 1)));
    }
    return table;
}

}  // namespace perkey

#include "perkey/text.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "perkey/util.hpp"

namespace perkey {

namespace {

// --- UTF-8 <-> codepoints ---------------------------------------------------

std::vector<uint32_t> decode_utf8(std::string_view s) {
    std::vector<uint32_t> cps;
    cps.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        unsigned char b = s[i];
        uint32_t cp = 0xFFFD;
        size_t len = 1;
        if (b < 0x80) {
            cp = b;
        } else if ((b >> 5) == 0x6 && i + 1 < s.size() && (s[i + 1] & 0xC0) == 0x80) {
            cp = (uint32_t(b & 0x1F) << 6) | (s[i + 1] & 0x3F);
            len = 2;
            if (cp < 0x80) cp = 0xFFFD;  // overlong
        } else if ((b >> 4) == 0xE && i + 2 < s.size() && (s[i + 1] & 0xC0) == 0x80 &&
                   (s[i + 2] & 0xC0) == 0x80) {
            cp = (uint32_t(b & 0x0F) << 12) | (uint32_t(s[i + 1] & 0x3F) << 6) | (s[i + 2] & 0x3F);
            len = 3;
            if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
        } else if ((b >> 3) == 0x1E && i + 3 < s.size() && (s[i + 1] & 0xC0) == 0x80 &&
                   (s[i + 2] & 0xC0) == 0x80 && (s[i + 3] & 0xC0) == 0x80) {
            cp = (uint32_t(b & 0x07) << 18) | (uint32_t(s[i + 1] & 0x3F) << 12) |
                 (uint32_t(s[i + 2] & 0x3F) << 6) | (s[i + 3] & 0x3F);
            len = 4;
            if (cp < 0x10000 || cp > 0x10FFFF) cp = 0xFFFD;
        }
        cps.push_back(cp);
        i += len;
    }
    return cps;
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out += char(cp);
    } else if (cp < 0x800) {
        out += char(0xC0 | (cp >> 6));
        out += char(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += char(0xE0 | (cp >> 12));
        out += char(0x80 | ((cp >> 6) & 0x3F));
        out += char(0x80 | (cp & 0x3F));
    } else {
        out += char(0xF0 | (cp >> 18));
        out += char(0x80 | ((cp >> 12) & 0x3F));
        out += char(0x80 | ((cp >> 6) & 0x3F));
        out += char(0x80 | (cp & 0x3F));
    }
}

std::string encode_utf8(const std::vector<uint32_t>& cps) {
    std::string out;
    out.reserve(cps.size() * 2);
    for (uint32_t cp : cps) append_utf8(out, cp);
    return out;
}

// --- character classes ------------------------------------------------------

bool is_space_cp(uint32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000: case 0xFEFF:
            return true;
        default:
            return (cp >= 0x2000 && cp <= 0x200B);  // en quad .. zero width space; ZWNJ excluded
    }
}

bool is_punct_cp(uint32_t cp) {
    if (cp < 0x80) {
        char c = char(cp);
        static const std::string ascii = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
        return ascii.find(c) != std::string::npos;
    }
    switch (cp) {
        case 0x060C:  // Arabic comma
        case 0x061B:  // Arabic semicolon
        case 0x061F:  // Arabic question mark
        case 0x066A:  // Arabic percent sign
        case 0x00AB: case 0x00BB:              // guillemets
        case 0x2018: case 0x2019: case 0x201C: case 0x201D:
        case 0x2013: case 0x2014: case 0x2026:
        case 0x00B7: case 0x06D4:              // middle dot, Arabic full stop
            return true;
        default:
            return false;
    }
}

bool is_sentence_end_cp(uint32_t cp) {
    return cp == '.' || cp == '!' || cp == '?' || cp == 0x061F || cp == 0x2026 || cp == 0x06D4;
}

// Perso-Arabic folding applied codepoint-wise after composition.
// Returns 0 when the codepoint is dropped (diacritics, tatweel).
uint32_t fold_cp(uint32_t cp) {
    if (cp == 0x064A || cp == 0x0649) return 0x06CC;  // Arabic yeh, alef maksura -> Farsi yeh
    if (cp == 0x0643) return 0x06A9;                  // Arabic kaf -> keheh
    if (cp >= 0x0660 && cp <= 0x0669) return '0' + (cp - 0x0660);  // Arabic-Indic digits
    if (cp >= 0x06F0 && cp <= 0x06F9) return '0' + (cp - 0x06F0);  // Extended Arabic-Indic
    if (cp == 0x0640) return 0;                       // tatweel
    if (cp >= 0x064B && cp <= 0x0652) return 0;       // tanween/harakat/sukun
    if (cp == 0x0670) return 0;                       // superscript alef
    return cp;
}

// Canonical composition for the hamza/madda sequences that actually occur in
// Perso-Arabic news text.
uint32_t compose_pair(uint32_t base, uint32_t mark) {
    if (mark == 0x0653 && base == 0x0627) return 0x0622;  // alef + madda
    if (mark == 0x0654) {
        if (base == 0x0627) return 0x0623;  // alef + hamza above
        if (base == 0x0648) return 0x0624;  // waw + hamza above
        if (base == 0x064A || base == 0x06CC) return 0x0626;  // yeh + hamza above
    }
    if (mark == 0x0655 && base == 0x0627) return 0x0625;  // alef + hamza below
    return 0;
}

}  // namespace

std::string normalize(std::string_view text) {
    std::vector<uint32_t> cps = decode_utf8(text);

    std::vector<uint32_t> out;
    out.reserve(cps.size());
    for (uint32_t cp : cps) {
        if (!out.empty()) {
            uint32_t composed = compose_pair(out.back(), cp);
            if (composed) {
                out.back() = composed;
                continue;
            }
        }
        out.push_back(cp);
    }

    std::vector<uint32_t> folded;
    folded.reserve(out.size());
    bool pending_space = false;
    for (uint32_t cp : out) {
        uint32_t f = fold_cp(cp);
        if (f == 0) continue;
        if (is_space_cp(f)) {
            pending_space = true;
            continue;
        }
        if (pending_space && !folded.empty()) folded.push_back(' ');
        pending_space = false;
        folded.push_back(f);
    }
    return encode_utf8(folded);
}

std::vector<std::string> tokenize(std::string_view normalized) {
    std::vector<uint32_t> cps = decode_utf8(normalized);
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    };
    for (uint32_t cp : cps) {
        if (is_space_cp(cp)) {
            flush();
        } else if (is_punct_cp(cp)) {
            flush();
            std::string p;
            append_utf8(p, cp);
            tokens.push_back(p);
        } else {
            append_utf8(cur, cp);
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> normalize_and_tokenize(std::string_view text) {
    return tokenize(normalize(text));
}

bool is_punct_token(std::string_view token) {
    std::vector<uint32_t> cps = decode_utf8(token);
    return cps.size() == 1 && is_punct_cp(cps[0]);
}

std::vector<std::pair<size_t, size_t>> sentence_spans(const std::vector<std::string>& tokens) {
    std::vector<std::pair<size_t, size_t>> spans;
    size_t begin = 0;
    for (size_t i = 0; i < tokens.size(); ++i) {
        std::vector<uint32_t> cps = decode_utf8(tokens[i]);
        if (cps.size() == 1 && is_sentence_end_cp(cps[0])) {
            if (i > begin) spans.emplace_back(begin, i);
            begin = i + 1;
        }
    }
    if (begin < tokens.size()) spans.emplace_back(begin, tokens.size());
    return spans;
}

Stopwords Stopwords::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopword list: " + path);
    Stopwords sw;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::string tok = normalize(line);
        if (!tok.empty()) sw.words.insert(tok);
    }
    return sw;
}

Stopwords Stopwords::from_tokens(const std::vector<std::string>& tokens) {
    Stopwords sw;
    for (const auto& t : tokens) {
        std::string tok = normalize(t);
        if (!tok.empty()) sw.words.insert(tok);
    }
    return sw;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& docs, size_t max_size) {
    std::unordered_map<std::string, uint64_t> freq;
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (const auto& doc : docs) {
        for (const auto& tok : doc) {
            ++freq[tok];
            hash = fnv1a(tok, hash);
            hash = fnv1a("\x1f", hash);
        }
    }

    std::vector<std::pair<std::string, uint64_t>> entries(freq.begin(), freq.end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (entries.size() > max_size) entries.resize(max_size);

    Vocabulary v;
    v.max_size_ = max_size;
    v.corpus_hash_ = hash;
    v.id_to_token_ = {"<pad>", "<unk>", "<sos>", "<eos>"};
    v.id_to_token_.reserve(entries.size() + kNumSpecials);
    for (const auto& [tok, _] : entries) {
        v.token_to_id_.emplace(tok, int(v.id_to_token_.size()));
        v.id_to_token_.push_back(tok);
    }
    return v;
}

const std::string& Vocabulary::token(int id) const {
    if (id < 0 || size_t(id) >= id_to_token_.size())
        throw std::out_of_range("vocab id out of range: " + std::to_string(id));
    return id_to_token_[size_t(id)];
}

std::vector<int> Vocabulary::encode(const std::vector<std::string>& tokens) const {
    std::vector<int> ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens) ids.push_back(id(t));
    return ids;
}

std::vector<std::string> Vocabulary::decode(const std::vector<int>& ids) const {
    std::vector<std::string> tokens;
    tokens.reserve(ids.size());
    for (int i : ids) {
        const std::string& t = token(i);
        if (i == kPad || i == kSos || i == kEos) continue;
        tokens.push_back(t);
    }
    return tokens;
}

void Vocabulary::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write vocabulary: " + path);
    char buf[32];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(corpus_hash_));
    out << "#vocab max_size=" << max_size_ << " corpus_hash=" << buf << "\n";
    for (size_t i = kNumSpecials; i < id_to_token_.size(); ++i) out << id_to_token_[i] << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

Vocabulary Vocabulary::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open vocabulary: " + path);
    std::string header;
    if (!std::getline(in, header) || header.rfind("#vocab ", 0) != 0)
        throw std::runtime_error("not a vocabulary file: " + path);

    Vocabulary v;
    {
        std::istringstream hs(header.substr(7));
        std::string field;
        while (hs >> field) {
            auto eq = field.find('=');
            if (eq == std::string::npos) continue;
            std::string key = field.substr(0, eq), val = field.substr(eq + 1);
            if (key == "max_size") v.max_size_ = std::stoull(val);
            if (key == "corpus_hash") v.corpus_hash_ = std::stoull(val, nullptr, 16);
        }
    }
    v.id_to_token_ = {"<pad>", "<unk>", "<sos>", "<eos>"};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        v.token_to_id_.emplace(line, int(v.id_to_token_.size()));
        v.id_to_token_.push_back(line);
    }
    return v;
}

}  // namespace perkey

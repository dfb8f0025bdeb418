#include "phishscan/text_pipeline.hpp"
#include "phishscan/errors.hpp"
#include "phishscan/porter_stemmer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace phishscan {

namespace {

// Mirrors assets/stopwords_v1.txt; keep the two in sync.
const char* kStopWords[] = {
    "a", "an", "the", "and", "or", "but", "if", "of", "at", "by", "for",
    "with", "to", "from", "in", "on", "off", "is", "are", "was", "were",
    "be", "been", "being", "am", "it", "its", "this", "that", "these",
    "those", "i", "you", "he", "she", "we", "they", "them", "his", "her",
    "him", "my", "your", "our", "their", "me", "us", "as", "so", "such",
    "what", "which", "who", "whom", "up", "down", "out", "over", "under",
    "again", "then", "there", "here", "when", "where", "why", "how", "all",
    "any", "both", "each", "own", "same", "than", "too", "very", "s", "t",
    "will", "just", "not", "no", "nor", "only", "do", "does", "did",
    "have", "has", "had", "about", "into", "through", "during", "while",
};

const std::unordered_set<std::string>& stop_set() {
    static const std::unordered_set<std::string> set(std::begin(kStopWords),
                                                     std::end(kStopWords));
    return set;
}

} // namespace

const std::vector<std::string>& stop_words() {
    static const std::vector<std::string> list(std::begin(kStopWords),
                                               std::end(kStopWords));
    return list;
}

bool is_stop_word(const std::string& word) { return stop_set().count(word) > 0; }

std::vector<std::string> load_stop_words(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read stop-word list " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(f, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (!line.empty() && line[0] != '#') words.push_back(line);
    }
    return words;
}

std::vector<std::string> preprocess(const std::string& text) {
    std::string normalized;
    normalized.reserve(text.size());
    for (unsigned char c : text) {
        if (std::isalnum(c))
            normalized.push_back(static_cast<char>(std::tolower(c)));
        else
            normalized.push_back(' ');
    }

    std::vector<std::string> tokens;
    std::istringstream ss(normalized);
    std::string word;
    while (ss >> word) {
        if (is_stop_word(word)) continue;
        tokens.push_back(porter_stem(word));
    }
    return tokens;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& corpus,
                             std::size_t max_features) {
    if (max_features < 1)
        throw std::invalid_argument("build_vocabulary: max_features must be >= 1");
    if (corpus.empty())
        throw std::invalid_argument("build_vocabulary: empty corpus");

    std::map<std::string, std::size_t> freq; // ordered map gives the alpha tie-break
    for (const auto& doc : corpus)
        for (const auto& tok : doc)
            if (!tok.empty() && !is_stop_word(tok)) freq[tok]++;

    std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > max_features) ranked.resize(max_features);

    Vocabulary v;
    v.max_features_ = max_features;
    v.words_.reserve(ranked.size());
    for (const auto& [word, count] : ranked) {
        (void)count;
        v.index_[word] = static_cast<int>(v.words_.size()) + 1;
        v.words_.push_back(word);
    }
    return v;
}

int Vocabulary::index_of(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? 0 : it->second;
}

std::string Vocabulary::to_json() const {
    nlohmann::json j;
    j["max_features"] = max_features_;
    j["words"] = words_;
    return j.dump();
}

Vocabulary Vocabulary::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Vocabulary v;
    v.max_features_ = j.at("max_features").get<std::size_t>();
    v.words_ = j.at("words").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < v.words_.size(); ++i)
        v.index_[v.words_[i]] = static_cast<int>(i) + 1;
    return v;
}

void Vocabulary::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << to_json();
}

Vocabulary Vocabulary::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

TokenSequence encode(const std::vector<std::string>& tokens,
                     const Vocabulary& vocab, std::size_t sequence_length) {
    if (sequence_length < 1)
        throw std::invalid_argument("encode: sequence_length must be >= 1");

    std::vector<int> mapped;
    for (const auto& tok : tokens) {
        int idx = vocab.index_of(tok);
        if (idx != 0) mapped.push_back(idx);
    }

    TokenSequence seq;
    seq.original_length = mapped.size();
    seq.indices.assign(sequence_length, 0);
    std::size_t keep = std::min(mapped.size(), sequence_length);
    // front truncation: the last `keep` indices survive, left-padded
    for (std::size_t i = 0; i < keep; ++i)
        seq.indices[sequence_length - keep + i] = mapped[mapped.size() - keep + i];
    return seq;
}

} // namespace phishscan

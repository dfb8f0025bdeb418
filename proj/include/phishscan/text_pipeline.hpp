#ifndef PHISHSCAN_TEXT_PIPELINE_HPP
#define PHISHSCAN_TEXT_PIPELINE_HPP

#include <string>
#include <unordered_map>
#include <vector>

namespace phishscan {

const std::vector<std::string>& stop_words();
bool is_stop_word(const std::string& word);
std::vector<std::string> load_stop_words(const std::string& path);

// lowercase -> strip non-alphanumeric -> split -> drop stop words -> stem
std::vector<std::string> preprocess(const std::string& text);

// Word-index map, 1-based by descending corpus frequency (ties alphabetical).
// Index 0 is reserved for padding.
class Vocabulary {
public:
    Vocabulary() = default;
    static Vocabulary build(const std::vector<std::vector<std::string>>& corpus,
                            std::size_t max_features);

    std::size_t size() const { return words_.size(); }
    std::size_t max_features() const { return max_features_; }
    const std::vector<std::string>& words() const { return words_; }
    int index_of(const std::string& word) const; // 0 when absent

    std::string to_json() const;
    static Vocabulary from_json(const std::string& text);
    void save(const std::string& path) const;
    static Vocabulary load(const std::string& path);

private:
    std::size_t max_features_ = 0;
    std::vector<std::string> words_; // words_[i] has index i+1
    std::unordered_map<std::string, int> index_;
};

struct TokenSequence {
    std::vector<int> indices; // fixed length, 0-padded at the front
    std::size_t original_length = 0;
};

// Maps tokens through the vocabulary, drops out-of-vocabulary tokens, keeps
// the last sequence_length indices and left-pads with 0.
TokenSequence encode(const std::vector<std::string>& tokens,
                     const Vocabulary& vocab, std::size_t sequence_length);

} // namespace phishscan

#endif

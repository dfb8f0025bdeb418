#ifndef PHISHSCAN_DATASETS_HPP
#define PHISHSCAN_DATASETS_HPP

#include <string>
#include <vector>

#include "phishscan/url_features.hpp"

namespace phishscan {

// RFC-4180-style CSV: quoted fields, doubled-quote escapes.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

struct UrlDataset {
    FeatureSchema schema;
    std::vector<UrlFeatureVector> rows;
};

// 87 feature columns + final "status" column with legitimate/phishing.
UrlDataset load_url_dataset(const std::string& path);

struct TextDataset {
    std::vector<std::pair<std::string, int>> rows; // (message, label) file order
    std::size_t unique_texts = 0;
};

// two-column CSV: label in {ham, spam}, text
TextDataset load_text_dataset(const std::string& path);

} // namespace phishscan

#endif

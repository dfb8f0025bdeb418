#ifndef PHISHSCAN_URL_FEATURES_HPP
#define PHISHSCAN_URL_FEATURES_HPP

#include <optional>
#include <string>
#include <vector>

namespace phishscan {

enum class FeatureGroup { url_lexical, page_content, external_service };

struct FeatureDef {
    std::string name;
    FeatureGroup group;
    bool live_computable; // can be derived from the URL string alone
};

// Ordered, immutable feature schema. The built-in schema has 87 entries:
// 56 url_lexical (23 of them live-computable), 24 page_content,
// 7 external_service.
class FeatureSchema {
public:
    static const FeatureSchema& builtin();
    static FeatureSchema from_header(const std::vector<std::string>& names);

    std::size_t size() const { return entries_.size(); }
    const FeatureDef& at(std::size_t i) const { return entries_.at(i); }
    const std::vector<FeatureDef>& entries() const { return entries_; }
    int index_of(const std::string& name) const; // -1 if absent

    std::vector<int> live_indices() const;
    std::size_t count(FeatureGroup g) const;

private:
    explicit FeatureSchema(std::vector<FeatureDef> entries);
    std::vector<FeatureDef> entries_;
};

inline constexpr int kLabelLegitimate = 0;
inline constexpr int kLabelPhishing = 1;

struct UrlFeatureVector {
    std::vector<double> values;       // aligned to schema order
    std::optional<int> label;         // 0 legitimate, 1 phishing
    std::vector<bool> imputed;        // true where a sentinel 0 was written
};

struct FeatureSelection {
    std::vector<int> selected_indices; // score-descending, ties by index
    std::vector<double> scores;        // one per schema index

    std::string to_json() const;
    static FeatureSelection from_json(const std::string& text);
    void save(const std::string& path) const;
    static FeatureSelection load(const std::string& path);
};

struct ParsedUrl {
    std::string scheme;
    std::string host;
    std::optional<int> port;
    std::string path;  // includes query/fragment tail
    static ParsedUrl parse(const std::string& url); // throws UrlParseError
    bool host_is_ip_literal() const;
};

UrlFeatureVector extract_lexical_features(const std::string& url,
                                          const FeatureSchema& schema);

// Chi-squared statistic per feature over class-conditional feature mass.
std::vector<double> chi2_scores(const std::vector<UrlFeatureVector>& dataset);

FeatureSelection select_top_k(const std::vector<double>& scores, int k);

} // namespace phishscan

#endif

#ifndef PHISHSCAN_RANDOM_FOREST_HPP
#define PHISHSCAN_RANDOM_FOREST_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "phishscan/url_features.hpp"

namespace phishscan {

inline constexpr int kUnlimitedDepth = -1;

struct TreeNode {
    // internal node when left && right are set, leaf otherwise
    int feature_index = -1;
    double threshold = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
    std::int64_t class_counts[2] = {0, 0};

    bool is_leaf() const { return !left; }
};

struct ForestModel {
    std::vector<std::unique_ptr<TreeNode>> trees;
    int n_trees = 0;
    int max_depth = kUnlimitedDepth;
    std::uint64_t random_state = 0;
    std::vector<int> feature_indices; // selection used at training

    std::string to_json() const;
    static ForestModel from_json(const std::string& text);
    void save(const std::string& path) const;
    static ForestModel load(const std::string& path);
};

ForestModel train_forest(const std::vector<UrlFeatureVector>& dataset,
                         const FeatureSelection& selection,
                         int n_trees, int max_depth,
                         std::uint64_t random_state);

struct ForestPrediction {
    int label;         // ties vote phishing
    double confidence; // fraction of trees voting phishing
};

ForestPrediction predict_forest(const ForestModel& model,
                                const UrlFeatureVector& vector);

// Deterministic stratified 80/20-style split; returns (train, test) indices.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
stratified_split(const std::vector<UrlFeatureVector>& dataset,
                 double test_fraction, std::uint64_t seed);

struct DepthSeedCell {
    int max_depth;
    std::uint64_t random_state;
    double accuracy;
};

struct DepthSeedStudy {
    std::vector<DepthSeedCell> cells;
    std::string to_json() const;
    std::string to_table() const;
};

DepthSeedStudy depth_seed_study(
    const std::vector<UrlFeatureVector>& dataset,
    const FeatureSelection& selection,
    const std::vector<std::pair<int, std::uint64_t>>& grid,
    int n_trees = 100, std::uint64_t split_seed = 0);

} // namespace phishscan

#endif

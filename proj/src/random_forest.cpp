#include "phishscan/random_forest.hpp"
#include "phishscan/errors.hpp"
#include "phishscan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace phishscan {

namespace {

double gini(const std::int64_t counts[2]) {
    double n = static_cast<double>(counts[0] + counts[1]);
    if (n == 0) return 0.0;
    double p0 = counts[0] / n, p1 = counts[1] / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

struct TreeBuilder {
    const std::vector<UrlFeatureVector>& data;
    const std::vector<int>& features;
    int max_depth;
    SplitMix64& rng;

    std::unique_ptr<TreeNode> build(std::vector<std::size_t>& samples, int depth) {
        auto node = std::make_unique<TreeNode>();
        for (std::size_t s : samples)
            node->class_counts[static_cast<std::size_t>(*data[s].label)]++;

        bool pure = node->class_counts[0] == 0 || node->class_counts[1] == 0;
        bool depth_capped = max_depth != kUnlimitedDepth && depth >= max_depth;
        if (pure || depth_capped || samples.size() < 2)
            return node;

        // subsample ceil(sqrt(d)) candidate features without replacement
        std::size_t d = features.size();
        std::size_t m = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(d))));
        std::vector<int> pool(features);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t j = i + rng.below(d - i);
            std::swap(pool[i], pool[j]);
        }

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_decrease = 0.0;
        const double parent_impurity = gini(node->class_counts);
        const double n_total = static_cast<double>(samples.size());

        std::vector<std::pair<double, int>> vals;
        for (std::size_t fi = 0; fi < m; ++fi) {
            int f = pool[fi];
            vals.clear();
            for (std::size_t s : samples)
                vals.emplace_back(data[s].values[static_cast<std::size_t>(f)],
                                  *data[s].label);
            std::sort(vals.begin(), vals.end());
            if (vals.front().first == vals.back().first) continue;

            std::int64_t left[2] = {0, 0};
            std::int64_t right[2] = {node->class_counts[0], node->class_counts[1]};
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                left[vals[i].second]++;
                right[vals[i].second]--;
                if (vals[i].first == vals[i + 1].first) continue;
                double threshold = vals[i].first +
                                   (vals[i + 1].first - vals[i].first) / 2.0;
                double nl = static_cast<double>(i + 1);
                double nr = n_total - nl;
                double weighted = (nl / n_total) * gini(left) +
                                  (nr / n_total) * gini(right);
                double decrease = parent_impurity - weighted;
                if (decrease > best_decrease) {
                    best_decrease = decrease;
                    best_feature = f;
                    best_threshold = threshold;
                }
            }
        }

        if (best_feature < 0)
            return node; // no impurity-decreasing split exists

        std::vector<std::size_t> left_samples, right_samples;
        for (std::size_t s : samples) {
            if (data[s].values[static_cast<std::size_t>(best_feature)] <= best_threshold)
                left_samples.push_back(s);
            else
                right_samples.push_back(s);
        }
        node->feature_index = best_feature;
        node->threshold = best_threshold;
        node->left = build(left_samples, depth + 1);
        node->right = build(right_samples, depth + 1);
        return node;
    }
};

nlohmann::json node_to_json(const TreeNode& n) {
    nlohmann::json j;
    if (n.is_leaf()) {
        j["counts"] = {n.class_counts[0], n.class_counts[1]};
    } else {
        j["feature"] = n.feature_index;
        j["threshold"] = n.threshold;
        j["counts"] = {n.class_counts[0], n.class_counts[1]};
        j["left"] = node_to_json(*n.left);
        j["right"] = node_to_json(*n.right);
    }
    return j;
}

std::unique_ptr<TreeNode> node_from_json(const nlohmann::json& j) {
    auto n = std::make_unique<TreeNode>();
    n->class_counts[0] = j.at("counts")[0].get<std::int64_t>();
    n->class_counts[1] = j.at("counts")[1].get<std::int64_t>();
    if (j.contains("feature")) {
        n->feature_index = j.at("feature").get<int>();
        n->threshold = j.at("threshold").get<double>();
        n->left = node_from_json(j.at("left"));
        n->right = node_from_json(j.at("right"));
    }
    return n;
}

} // namespace

ForestModel train_forest(const std::vector<UrlFeatureVector>& dataset,
                         const FeatureSelection& selection,
                         int n_trees, int max_depth,
                         std::uint64_t random_state) {
    if (dataset.size() < 2)
        throw TrainingError("train_forest: need at least 2 samples");
    std::size_t per_class[2] = {0, 0};
    for (const auto& row : dataset) {
        if (!row.label) throw TrainingError("train_forest: unlabeled sample");
        per_class[static_cast<std::size_t>(*row.label)]++;
    }
    if (per_class[0] == 0 || per_class[1] == 0)
        throw TrainingError("train_forest: both classes required");
    if (n_trees < 1)
        throw TrainingError("train_forest: n_trees must be >= 1");

    ForestModel model;
    model.n_trees = n_trees;
    model.max_depth = max_depth;
    model.random_state = random_state;
    model.feature_indices = selection.selected_indices;

    const std::size_t n = dataset.size();
    for (int t = 0; t < n_trees; ++t) {
        SplitMix64 rng(mix_seed(random_state, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> bootstrap(n);
        for (std::size_t i = 0; i < n; ++i)
            bootstrap[i] = static_cast<std::size_t>(rng.below(n));
        TreeBuilder builder{dataset, model.feature_indices, max_depth, rng};
        model.trees.push_back(builder.build(bootstrap, 0));
    }
    return model;
}

ForestPrediction predict_forest(const ForestModel& model,
                                const UrlFeatureVector& vector) {
    int max_feature = -1;
    for (int f : model.feature_indices) max_feature = std::max(max_feature, f);
    if (static_cast<int>(vector.values.size()) <= max_feature)
        throw std::invalid_argument("predict_forest: feature vector shorter than schema");

    int phishing_votes = 0;
    for (const auto& tree : model.trees) {
        const TreeNode* node = tree.get();
        while (!node->is_leaf()) {
            double v = vector.values[static_cast<std::size_t>(node->feature_index)];
            node = v <= node->threshold ? node->left.get() : node->right.get();
        }
        // leaf majority, tie -> phishing
        phishing_votes += node->class_counts[1] >= node->class_counts[0] ? 1 : 0;
    }
    double confidence = static_cast<double>(phishing_votes) /
                        static_cast<double>(model.trees.size());
    int label = 2 * phishing_votes >= static_cast<int>(model.trees.size())
                    ? kLabelPhishing
                    : kLabelLegitimate;
    return {label, confidence};
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
stratified_split(const std::vector<UrlFeatureVector>& dataset,
                 double test_fraction, std::uint64_t seed) {
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < dataset.size(); ++i)
        by_class[static_cast<std::size_t>(*dataset[i].label)].push_back(i);

    std::vector<std::size_t> train, test;
    for (auto& idx : by_class) {
        SplitMix64 rng(mix_seed(seed, idx.empty() ? 0 : *dataset[idx.front()].label));
        for (std::size_t i = idx.size(); i > 1; --i) {
            std::size_t j = rng.below(i);
            std::swap(idx[i - 1], idx[j]);
        }
        std::size_t n_test = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(idx.size())));
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < n_test ? test : train).push_back(idx[i]);
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

DepthSeedStudy depth_seed_study(
    const std::vector<UrlFeatureVector>& dataset,
    const FeatureSelection& selection,
    const std::vector<std::pair<int, std::uint64_t>>& grid,
    int n_trees, std::uint64_t split_seed) {
    auto [train_idx, test_idx] = stratified_split(dataset, 0.2, split_seed);
    std::vector<UrlFeatureVector> train_set, test_set;
    for (auto i : train_idx) train_set.push_back(dataset[i]);
    for (auto i : test_idx) test_set.push_back(dataset[i]);

    DepthSeedStudy study;
    for (const auto& [depth, seed] : grid) {
        ForestModel model = train_forest(train_set, selection, n_trees, depth, seed);
        std::size_t correct = 0;
        for (const auto& row : test_set)
            if (predict_forest(model, row).label == *row.label) ++correct;
        double acc = static_cast<double>(correct) /
                     static_cast<double>(test_set.size());
        study.cells.push_back({depth, seed, acc});
    }
    return study;
}

std::string DepthSeedStudy::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : cells)
        j.push_back({{"max_depth", c.max_depth},
                     {"random_state", c.random_state},
                     {"accuracy", c.accuracy}});
    return j.dump(2);
}

std::string DepthSeedStudy::to_table() const {
    std::ostringstream os;
    os << "max_depth  random_state  accuracy\n";
    for (const auto& c : cells) {
        os << c.max_depth << "\t   " << c.random_state << "\t\t "
           << std::fixed;
        os.precision(4);
        os << c.accuracy << '\n';
    }
    return os.str();
}

std::string ForestModel::to_json() const {
    nlohmann::json j;
    j["n_trees"] = n_trees;
    j["max_depth"] = max_depth;
    j["random_state"] = random_state;
    j["feature_indices"] = feature_indices;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : trees) arr.push_back(node_to_json(*t));
    j["trees"] = std::move(arr);
    return j.dump();
}

ForestModel ForestModel::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ForestModel m;
    m.n_trees = j.at("n_trees").get<int>();
    m.max_depth = j.at("max_depth").get<int>();
    m.random_state = j.at("random_state").get<std::uint64_t>();
    m.feature_indices = j.at("feature_indices").get<std::vector<int>>();
    for (const auto& t : j.at("trees")) m.trees.push_back(node_from_json(t));
    return m;
}

void ForestModel::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << to_json();
}

ForestModel ForestModel::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

} // namespace phishscan

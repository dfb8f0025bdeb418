#include "phishscan/evaluate.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace phishscan {

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

EvaluationReport evaluate_end_to_end(const std::vector<FixtureSite>& fixtures,
                                     const std::string& base_url,
                                     const Scanner& scanner) {
    EvaluationReport report;

    std::map<std::string, std::pair<std::size_t, std::size_t>> per_cat; // correct/total
    std::size_t correct = 0;
    for (const auto& site : fixtures) {
        std::string url = base_url + "/" + site.directory + "/";
        ScanVerdict verdict = scanner.scan(url);
        bool ok = verdict.final_label == site.expected_label;
        if (ok) ++correct;
        if (!ok && site.expected_label == kLabelLegitimate)
            report.false_positives++;
        if (!ok && site.expected_label == kLabelPhishing)
            report.missed_phishing++;
        auto& [cat_correct, cat_total] = per_cat[to_string(site.category)];
        cat_total++;
        if (ok) cat_correct++;
        report.per_layer_detections[verdict.detected_at_layer]++;
        report.results.emplace_back(site, std::move(verdict));
    }

    for (const auto& [cat, counts] : per_cat)
        report.per_category_accuracy[cat] =
            static_cast<double>(counts.first) / static_cast<double>(counts.second);
    report.overall_accuracy = fixtures.empty()
                                  ? 0.0
                                  : static_cast<double>(correct) /
                                        static_cast<double>(fixtures.size());

    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::ostringstream ts;
    ts << std::put_time(std::gmtime(&t), "%Y-%m-%dT%H:%M:%SZ");
    report.timestamp = ts.str();
    return report;
}

std::string EvaluationReport::to_json() const {
    nlohmann::json j;
    j["timestamp"] = timestamp;
    j["overall_accuracy"] = overall_accuracy;
    j["false_positives"] = false_positives;
    j["missed_phishing"] = missed_phishing;
    j["per_category_accuracy"] = per_category_accuracy;
    nlohmann::json layers = nlohmann::json::object();
    for (const auto& [layer, count] : per_layer_detections)
        layers[std::to_string(layer)] = count;
    j["per_layer_detections"] = layers;
    j["model_hashes"] = model_hashes;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [site, verdict] : results) {
        arr.push_back({{"category", to_string(site.category)},
                       {"directory", site.directory},
                       {"expected_label", site.expected_label},
                       {"verdict", nlohmann::json::parse(verdict.to_json())}});
    }
    j["results"] = arr;
    return j.dump(2);
}

std::string EvaluationReport::to_table() const {
    std::ostringstream os;
    os << "category      directory     expected    verdict     layer\n";
    for (const auto& [site, verdict] : results) {
        os << to_string(site.category) << "\t" << site.directory << "\t"
           << (site.expected_label ? "phishing" : "legitimate") << "\t"
           << (verdict.final_label ? "phishing" : "legitimate") << "\t"
           << verdict.detected_at_layer << "\n";
    }
    os << "overall accuracy: " << overall_accuracy
       << "  false positives: " << false_positives
       << "  missed: " << missed_phishing << "\n";
    return os.str();
}

} // namespace phishscan

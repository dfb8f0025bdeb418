#ifndef PHISHSCAN_EVALUATE_HPP
#define PHISHSCAN_EVALUATE_HPP

#include <map>
#include <string>
#include <vector>

#include "phishscan/fixtures.hpp"
#include "phishscan/orchestrator.hpp"

namespace phishscan {

struct EvaluationReport {
    std::vector<std::pair<FixtureSite, ScanVerdict>> results;
    std::map<std::string, double> per_category_accuracy;
    std::map<int, std::size_t> per_layer_detections;
    double overall_accuracy = 0.0;
    std::size_t false_positives = 0;
    std::size_t missed_phishing = 0;
    std::map<std::string, std::string> model_hashes;
    std::string timestamp;

    bool all_criteria_met() const {
        return false_positives == 0 && missed_phishing == 0;
    }

    std::string to_json() const;
    std::string to_table() const;
};

std::string fnv1a_hex(const std::string& bytes);

// Scans every fixture site through the running server at base_url.
EvaluationReport evaluate_end_to_end(const std::vector<FixtureSite>& fixtures,
                                     const std::string& base_url,
                                     const Scanner& scanner);

} // namespace phishscan

#endif

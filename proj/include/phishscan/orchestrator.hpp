#ifndef PHISHSCAN_ORCHESTRATOR_HPP
#define PHISHSCAN_ORCHESTRATOR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phishscan/content_fetcher.hpp"
#include "phishscan/lstm_classifier.hpp"
#include "phishscan/media_transcribers.hpp"
#include "phishscan/random_forest.hpp"
#include "phishscan/text_pipeline.hpp"
#include "phishscan/url_features.hpp"

namespace phishscan {

struct ScanConfig {
    FetchLimits fetch;
    bool short_circuit = false;     // stop after layer 1 flags
    double layer4_threshold = 0.5;
    std::size_t media_max_bytes = kMediaMaxBytes;
};

struct LayerOneResult {
    int label;
    double confidence;
};

struct ScanVerdict {
    std::string url;
    int final_label = kLabelLegitimate;
    std::optional<LayerOneResult> layer1;
    std::optional<double> layer4_probability;
    int detected_at_layer = 0; // 1, 4, or 0 for none
    int ocr_count = 0, video_count = 0, failure_count = 0;
    std::map<std::string, long> timings_ms;
    std::vector<std::string> errors;

    std::string to_json() const;
};

// body text, then OCR texts, then video transcripts, single-space joined,
// empty sections skipped
std::string merge_texts(const TranscriptBundle& bundle);

struct BatchSummary {
    std::size_t total = 0;
    std::size_t correct = 0;
    double accuracy = 0.0;
    std::map<int, std::size_t> detections_per_layer; // layer -> count
};

class Scanner {
public:
    Scanner(ForestModel forest, const FeatureSchema& schema, LstmModel lstm,
            Vocabulary vocab, ScanConfig config);

    ScanVerdict scan(const std::string& url) const;

    std::pair<std::vector<ScanVerdict>, BatchSummary>
    scan_batch(const std::vector<std::string>& urls,
               const std::vector<int>* labels = nullptr) const;

    const ScanConfig& config() const { return config_; }

private:
    ForestModel forest_;
    const FeatureSchema& schema_;
    LstmModel lstm_;
    Vocabulary vocab_;
    ScanConfig config_;
    mutable MockImageTranscriber image_transcriber_;
    mutable MockVideoTranscriber video_transcriber_;
};

} // namespace phishscan

#endif

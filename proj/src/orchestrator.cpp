#include "phishscan/orchestrator.hpp"
#include "phishscan/errors.hpp"

#include <chrono>

#include <json.hpp>

namespace phishscan {

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace

std::string merge_texts(const TranscriptBundle& bundle) {
    std::string merged;
    auto append = [&merged](const std::string& part) {
        if (part.empty()) return;
        if (!merged.empty()) merged += ' ';
        merged += part;
    };
    append(bundle.body_text);
    for (const auto& [url, text] : bundle.ocr_texts) append(text);
    for (const auto& [url, text] : bundle.video_transcripts) append(text);
    return merged;
}

Scanner::Scanner(ForestModel forest, const FeatureSchema& schema, LstmModel lstm,
                 Vocabulary vocab, ScanConfig config)
    : forest_(std::move(forest)), schema_(schema), lstm_(std::move(lstm)),
      vocab_(std::move(vocab)), config_(std::move(config)) {
    if (forest_.trees.empty())
        throw ConfigError("scanner: forest model has no trees");
    if (lstm_.dims.vocab_size != static_cast<int>(vocab_.size()))
        throw ConfigError("scanner: LSTM vocab_size does not match vocabulary");
}

ScanVerdict Scanner::scan(const std::string& url) const {
    ScanVerdict verdict;
    verdict.url = url;

    // Layer 1: URL lexical features + forest vote
    {
        Stopwatch sw;
        UrlFeatureVector features = extract_lexical_features(url, schema_);
        ForestPrediction pred = predict_forest(forest_, features);
        verdict.layer1 = LayerOneResult{pred.label, pred.confidence};
        verdict.timings_ms["layer1"] = sw.ms();
    }

    bool layer1_flags = verdict.layer1->label == kLabelPhishing;
    if (layer1_flags && config_.short_circuit) {
        verdict.final_label = kLabelPhishing;
        verdict.detected_at_layer = 1;
        return verdict;
    }

    // Layer 2: fetch + strip + media extraction
    PageContent page;
    bool fetched = false;
    {
        Stopwatch sw;
        try {
            page = fetch_and_parse(url, config_.fetch);
            fetched = true;
        } catch (const FetchError& e) {
            verdict.errors.push_back(std::string("fetch: ") + e.what());
        }
        verdict.timings_ms["layer2"] = sw.ms();
    }

    bool layer4_flags = false;
    if (fetched) {
        // Layers 2-3: transcription
        TranscriptBundle bundle;
        {
            Stopwatch sw;
            bundle = collect_transcripts(page, http_media_fetcher(config_.fetch),
                                         image_transcriber_, video_transcriber_,
                                         config_.media_max_bytes);
            verdict.timings_ms["layer3"] = sw.ms();
        }
        verdict.ocr_count = static_cast<int>(bundle.ocr_texts.size());
        verdict.video_count = static_cast<int>(bundle.video_transcripts.size());
        verdict.failure_count = static_cast<int>(bundle.failures.size());
        for (const auto& [media_url, kind] : bundle.failures)
            verdict.errors.push_back("media " + media_url + ": " + kind);

        // Layer 4: merged text -> LSTM
        {
            Stopwatch sw;
            std::string merged = merge_texts(bundle);
            TokenSequence seq =
                encode(preprocess(merged), vocab_,
                       static_cast<std::size_t>(lstm_.dims.sequence_length));
            double probability = forward(lstm_, seq);
            verdict.layer4_probability = probability;
            layer4_flags = probability >= config_.layer4_threshold;
            verdict.timings_ms["layer4"] = sw.ms();
        }
    }

    // fusion: OR over layers
    if (layer1_flags) {
        verdict.final_label = kLabelPhishing;
        verdict.detected_at_layer = 1;
    } else if (layer4_flags) {
        verdict.final_label = kLabelPhishing;
        verdict.detected_at_layer = 4;
    } else {
        verdict.final_label = kLabelLegitimate;
        verdict.detected_at_layer = 0;
    }
    return verdict;
}

std::pair<std::vector<ScanVerdict>, BatchSummary>
Scanner::scan_batch(const std::vector<std::string>& urls,
                    const std::vector<int>* labels) const {
    std::vector<ScanVerdict> verdicts;
    BatchSummary summary;
    summary.total = urls.size();
    for (std::size_t i = 0; i < urls.size(); ++i) {
        ScanVerdict v;
        try {
            v = scan(urls[i]);
        } catch (const std::exception& e) {
            v.url = urls[i];
            v.errors.push_back(std::string("scan: ") + e.what());
        }
        summary.detections_per_layer[v.detected_at_layer]++;
        if (labels && i < labels->size() && v.final_label == (*labels)[i])
            summary.correct++;
        verdicts.push_back(std::move(v));
    }
    if (labels && !urls.empty())
        summary.accuracy = static_cast<double>(summary.correct) /
                           static_cast<double>(urls.size());
    return {std::move(verdicts), summary};
}

std::string ScanVerdict::to_json() const {
    nlohmann::json j;
    j["url"] = url;
    j["final_label"] = final_label == kLabelPhishing ? "phishing" : "legitimate";
    j["detected_at_layer"] = detected_at_layer;
    if (layer1)
        j["layer1"] = {{"label", layer1->label == kLabelPhishing ? "phishing"
                                                                 : "legitimate"},
                       {"confidence", layer1->confidence}};
    else
        j["layer1"] = nullptr;
    if (layer4_probability)
        j["layer4"] = {{"probability", *layer4_probability}};
    else
        j["layer4"] = nullptr;
    j["transcripts"] = {{"ocr", ocr_count},
                        {"video", video_count},
                        {"failures", failure_count}};
    nlohmann::json timings = nlohmann::json::object();
    for (const auto& [k, v] : timings_ms) timings[k] = v;
    j["timings_ms"] = timings;
    j["errors"] = errors;
    return j.dump();
}

} // namespace phishscan

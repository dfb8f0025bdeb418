#include <doctest.h>

#include <memory>
#include <string>
#include <thread>

#include "phishscan/errors.hpp"
#include "phishscan/media_transcribers.hpp"
#include "phishscan/orchestrator.hpp"
#include "phishscan/synthetic.hpp"

// after the Eigen-bearing headers: a macro leaking from httplib's system
// includes otherwise rewrites Eigen template signatures
#include <httplib.h>

using namespace phishscan;

namespace {

struct TrainedModels {
    ForestModel forest;
    LstmModel lstm;
    Vocabulary vocab;
};

// Train once; every test case reuses the same models.
const TrainedModels& models() {
    static TrainedModels cached = [] {
        TrainedModels out;

        auto urls = generate_synthetic_url_dataset(600, 11);
        auto selection = select_top_k(chi2_scores(urls.rows), 19);
        out.forest = train_forest(urls.rows, selection, 30, 10, 0);

        auto corpus = generate_synthetic_text_corpus(1000, 11);
        std::vector<std::vector<std::string>> docs;
        for (const auto& [text, label] : corpus.rows)
            docs.push_back(preprocess(text));
        out.vocab = Vocabulary::build(docs, 10000);

        LstmDims dims;
        dims.vocab_size = static_cast<int>(out.vocab.size());
        dims.d_embed = 12;
        dims.d_hidden = 12;
        dims.sequence_length = 30;
        out.lstm = LstmModel::init(dims, 7);

        std::vector<std::pair<TokenSequence, int>> train_set;
        for (std::size_t i = 0; i < corpus.rows.size(); ++i)
            train_set.emplace_back(
                encode(docs[i], out.vocab, 30), corpus.rows[i].second);
        TrainConfig cfg;
        cfg.epochs = 15;
        cfg.batch_size = 24;
        cfg.learning_rate = 5e-3;
        cfg.shuffle_seed = 1;
        auto metrics = train(out.lstm, train_set, cfg);
        REQUIRE(metrics.back().val_accuracy > 0.9);
        return out;
    }();
    return cached;
}

Scanner make_scanner(ScanConfig config) {
    const auto& m = models();
    return Scanner(ForestModel::from_json(m.forest.to_json()),
                   FeatureSchema::builtin(),
                   LstmModel::from_json(m.lstm.to_json()), m.vocab,
                   std::move(config));
}

class PageServer {
public:
    PageServer() {
        auto page = [this](const std::string& path, const std::string& html) {
            server_.Get(path, [html](const httplib::Request&,
                                     httplib::Response& res) {
                res.set_content(html, "text/html");
            });
        };
        page("/newsletter/",
             "<html><body><p>welcome to our library catalog browse the new "
             "arrivals</p><p>the museum opens a new exhibit this weekend</p>"
             "</body></html>");
        page("/alert/",
             "<html><body><h1>urgent security alert confirm your identity now"
             "</h1><p>verify your password immediately to restore access</p>"
             "</body></html>");
        page("/gallery/",
             "<html><body><p>photos from the spring open day are in the shared "
             "album</p><img src=\"/m/pic.png\"></body></html>");
        auto ocr_bytes = mockmedia::encode(
            MediaKindTag::image,
            "your account has been suspended click the link to unlock");
        server_.Get("/m/pic.png", [ocr_bytes](const httplib::Request&,
                                              httplib::Response& res) {
            res.set_content(std::string(ocr_bytes.begin(), ocr_bytes.end()),
                            "application/octet-stream");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        REQUIRE(port_ > 0);
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~PageServer() {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }
    std::string base() const {
        return "http://127.0.0.1:" + std::to_string(port_);
    }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
};

TranscriptBundle bundle(std::string body,
                        std::vector<std::string> ocr,
                        std::vector<std::string> video) {
    TranscriptBundle b;
    b.body_text = std::move(body);
    for (auto& t : ocr) b.ocr_texts.emplace_back("u", std::move(t));
    for (auto& t : video) b.video_transcripts.emplace_back("u", std::move(t));
    return b;
}

} // namespace

TEST_CASE("merge_texts joins body, ocr, video in order and skips empties") {
    CHECK(merge_texts(bundle("body", {"o1", "o2"}, {"v1"})) == "body o1 o2 v1");
    CHECK(merge_texts(bundle("", {"o1"}, {"v1"})) == "o1 v1");
    CHECK(merge_texts(bundle("body", {"", "o2"}, {})) == "body o2");
    CHECK(merge_texts(bundle("", {}, {})).empty());
}

TEST_CASE("scanner construction validates its models") {
    const auto& m = models();
    ForestModel empty_forest;
    CHECK_THROWS_AS(Scanner(std::move(empty_forest), FeatureSchema::builtin(),
                            LstmModel::from_json(m.lstm.to_json()), m.vocab,
                            ScanConfig{}),
                    ConfigError);

    LstmModel wrong = LstmModel::from_json(m.lstm.to_json());
    wrong.dims.vocab_size += 1;
    CHECK_THROWS_AS(Scanner(ForestModel::from_json(m.forest.to_json()),
                            FeatureSchema::builtin(), std::move(wrong), m.vocab,
                            ScanConfig{}),
                    ConfigError);
}

TEST_CASE("benign page passes every layer") {
    PageServer srv;
    auto scanner = make_scanner(ScanConfig{});
    auto verdict = scanner.scan(srv.base() + "/newsletter/");
    CHECK(verdict.final_label == kLabelLegitimate);
    CHECK(verdict.detected_at_layer == 0);
    REQUIRE(verdict.layer1.has_value());
    CHECK(verdict.layer1->label == kLabelLegitimate);
    REQUIRE(verdict.layer4_probability.has_value());
    CHECK(*verdict.layer4_probability < 0.5);
    CHECK(verdict.errors.empty());
}

TEST_CASE("phishing body text is caught at layer 4") {
    PageServer srv;
    auto scanner = make_scanner(ScanConfig{});
    auto verdict = scanner.scan(srv.base() + "/alert/");
    CHECK(verdict.final_label == kLabelPhishing);
    CHECK(verdict.detected_at_layer == 4);
    CHECK(verdict.layer1->label == kLabelLegitimate); // URL itself is clean
    CHECK(*verdict.layer4_probability >= 0.5);
}

TEST_CASE("phishing hidden in an image is caught through OCR") {
    PageServer srv;
    auto scanner = make_scanner(ScanConfig{});
    auto verdict = scanner.scan(srv.base() + "/gallery/");
    CHECK(verdict.ocr_count == 1);
    CHECK(verdict.failure_count == 0);
    CHECK(verdict.final_label == kLabelPhishing);
    CHECK(verdict.detected_at_layer == 4);
}

TEST_CASE("threshold sweep is monotone on the same page") {
    PageServer srv;
    ScanConfig strict;
    strict.layer4_threshold = 0.999;
    ScanConfig lax;
    lax.layer4_threshold = 1e-6;
    auto benign_strict = make_scanner(strict).scan(srv.base() + "/newsletter/");
    auto benign_lax = make_scanner(lax).scan(srv.base() + "/newsletter/");
    // identical probability, opposite verdicts: only the threshold moved
    CHECK(*benign_strict.layer4_probability == *benign_lax.layer4_probability);
    CHECK(benign_strict.final_label == kLabelLegitimate);
    CHECK(benign_lax.final_label == kLabelPhishing);
    CHECK(benign_lax.detected_at_layer == 4);
}

TEST_CASE("fetch failure degrades to a layer-1-only verdict") {
    ScanConfig config;
    config.fetch.timeout_ms = 1500;
    auto scanner = make_scanner(config);

    // clean-looking URL, nothing listening: verdict stays legitimate but the
    // failure is recorded
    auto verdict = scanner.scan("http://127.0.0.1:9/docs/");
    CHECK(verdict.final_label == kLabelLegitimate);
    CHECK(verdict.detected_at_layer == 0);
    CHECK_FALSE(verdict.layer4_probability.has_value());
    REQUIRE_FALSE(verdict.errors.empty());
    CHECK(verdict.errors.front().rfind("fetch:", 0) == 0);

    // phishing-looking URL, same dead host: layer 1 still convicts
    auto phish = scanner.scan(sample_phishing_url(3));
    CHECK(phish.layer1->label == kLabelPhishing);
    CHECK(phish.final_label == kLabelPhishing);
    CHECK(phish.detected_at_layer == 1);
}

TEST_CASE("short-circuit skips the network entirely") {
    ScanConfig config;
    config.short_circuit = true;
    auto scanner = make_scanner(config);
    auto verdict = scanner.scan(sample_phishing_url(3));
    CHECK(verdict.final_label == kLabelPhishing);
    CHECK(verdict.detected_at_layer == 1);
    CHECK(verdict.errors.empty());
    CHECK(verdict.timings_ms.count("layer1") == 1);
    CHECK(verdict.timings_ms.count("layer2") == 0); // no fetch attempted
    CHECK_FALSE(verdict.layer4_probability.has_value());
}

TEST_CASE("scan_batch aggregates verdicts and accuracy") {
    PageServer srv;
    auto scanner = make_scanner(ScanConfig{});
    std::vector<std::string> urls = {
        srv.base() + "/newsletter/",
        srv.base() + "/alert/",
        sample_phishing_url(3),
    };
    std::vector<int> labels = {0, 1, 1};
    auto [verdicts, summary] = scanner.scan_batch(urls, &labels);
    REQUIRE(verdicts.size() == 3);
    CHECK(summary.total == 3);
    CHECK(summary.correct == 3);
    CHECK(summary.accuracy == 1.0);
    CHECK(summary.detections_per_layer.at(0) == 1);
    CHECK(summary.detections_per_layer.at(4) == 1);
    CHECK(summary.detections_per_layer.at(1) == 1);
}

TEST_CASE("verdict JSON carries the layer evidence") {
    PageServer srv;
    auto scanner = make_scanner(ScanConfig{});
    auto verdict = scanner.scan(srv.base() + "/alert/");
    std::string j = verdict.to_json();
    CHECK(j.find("\"final_label\":\"phishing\"") != std::string::npos);
    CHECK(j.find("\"detected_at_layer\":4") != std::string::npos);
    CHECK(j.find("\"layer1\"") != std::string::npos);
    CHECK(j.find("\"probability\"") != std::string::npos);
}

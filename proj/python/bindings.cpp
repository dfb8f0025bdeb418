// Python bindings for the phishscan core: feature extraction, feature
// selection, both classifiers, page parsing, the mock media container, the
// fixture generator, and the four-layer scanner.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phishscan/content_fetcher.hpp"
#include "phishscan/datasets.hpp"
#include "phishscan/errors.hpp"
#include "phishscan/evaluate.hpp"
#include "phishscan/fixtures.hpp"
#include "phishscan/lstm_classifier.hpp"
#include "phishscan/media_transcribers.hpp"
#include "phishscan/orchestrator.hpp"
#include "phishscan/porter_stemmer.hpp"
#include "phishscan/random_forest.hpp"
#include "phishscan/synthetic.hpp"
#include "phishscan/text_pipeline.hpp"
#include "phishscan/url_features.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace phishscan;

namespace {

std::vector<UrlFeatureVector> rows_from(
    const std::vector<std::vector<double>>& matrix,
    const std::vector<int>& labels) {
    if (matrix.size() != labels.size())
        throw std::invalid_argument("matrix and labels must have equal length");
    std::vector<UrlFeatureVector> rows;
    rows.reserve(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        UrlFeatureVector v;
        v.values = matrix[i];
        v.label = labels[i];
        rows.push_back(std::move(v));
    }
    return rows;
}

// Scanner wrapper owning its models, constructed from saved model files.
class PyScanner {
public:
    PyScanner(const std::string& forest_json, const std::string& lstm_json,
              const std::string& vocab_json, double threshold,
              bool short_circuit)
        : scanner_(make(forest_json, lstm_json, vocab_json, threshold,
                        short_circuit)) {}

    std::string scan(const std::string& url) const {
        return scanner_.scan(url).to_json();
    }

private:
    static Scanner make(const std::string& forest_json,
                        const std::string& lstm_json,
                        const std::string& vocab_json, double threshold,
                        bool short_circuit) {
        ScanConfig config;
        config.layer4_threshold = threshold;
        config.short_circuit = short_circuit;
        return Scanner(ForestModel::from_json(forest_json),
                       FeatureSchema::builtin(),
                       LstmModel::from_json(lstm_json),
                       Vocabulary::from_json(vocab_json), config);
    }

    Scanner scanner_;
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "four-layer phishing site detection core";

    // ---- URL lexical features and chi-squared selection --------------------
    m.def("feature_names", [] {
        std::vector<std::string> names;
        for (const auto& d : FeatureSchema::builtin().entries())
            names.push_back(d.name);
        return names;
    });
    m.def("extract_lexical_features", [](const std::string& url) {
        return extract_lexical_features(url, FeatureSchema::builtin()).values;
    }, py::arg("url"));
    m.def("chi2_scores", [](const std::vector<std::vector<double>>& matrix,
                            const std::vector<int>& labels) {
        return chi2_scores(rows_from(matrix, labels));
    }, py::arg("matrix"), py::arg("labels"));
    m.def("select_top_k", [](const std::vector<double>& scores, int k) {
        return select_top_k(scores, k).selected_indices;
    }, py::arg("scores"), py::arg("k"));

    // ---- random forest -----------------------------------------------------
    m.def("train_url_model",
          [](const std::vector<std::vector<double>>& matrix,
             const std::vector<int>& labels, int k, int n_trees, int max_depth,
             std::uint64_t seed) {
              auto rows = rows_from(matrix, labels);
              auto selection = select_top_k(chi2_scores(rows), k);
              return train_forest(rows, selection, n_trees, max_depth, seed)
                  .to_json();
          },
          py::arg("matrix"), py::arg("labels"), py::arg("k") = 19,
          py::arg("n_trees") = 100, py::arg("max_depth") = 30,
          py::arg("seed") = 0);
    m.def("predict_url_model",
          [](const std::string& model_json, const std::vector<double>& values) {
              UrlFeatureVector v;
              v.values = values;
              auto pred = predict_forest(ForestModel::from_json(model_json), v);
              return py::make_tuple(pred.label, pred.confidence);
          },
          py::arg("model_json"), py::arg("values"));

    // ---- text pipeline -----------------------------------------------------
    m.def("porter_stem", &porter_stem, py::arg("word"));
    m.def("preprocess", &preprocess, py::arg("text"));
    m.def("stop_words", [] { return stop_words(); });
    m.def("build_vocabulary",
          [](const std::vector<std::vector<std::string>>& corpus,
             std::size_t max_features) {
              return Vocabulary::build(corpus, max_features).to_json();
          },
          py::arg("corpus"), py::arg("max_features") = 10000);
    m.def("encode",
          [](const std::vector<std::string>& tokens,
             const std::string& vocab_json, std::size_t sequence_length) {
              return encode(tokens, Vocabulary::from_json(vocab_json),
                            sequence_length)
                  .indices;
          },
          py::arg("tokens"), py::arg("vocab_json"),
          py::arg("sequence_length") = 100);

    // ---- LSTM classifier ---------------------------------------------------
    m.def("train_text_model",
          [](const std::vector<std::string>& texts,
             const std::vector<int>& labels, std::size_t max_features,
             int sequence_length, int d_embed, int d_hidden, int epochs,
             int batch_size, double learning_rate, std::uint64_t seed) {
              if (texts.size() != labels.size())
                  throw std::invalid_argument(
                      "texts and labels must have equal length");
              std::vector<std::vector<std::string>> docs;
              for (const auto& t : texts) docs.push_back(preprocess(t));
              Vocabulary vocab = Vocabulary::build(docs, max_features);
              LstmDims dims{static_cast<int>(vocab.size()), d_embed, d_hidden,
                            sequence_length};
              LstmModel model = LstmModel::init(dims, seed);
              std::vector<std::pair<TokenSequence, int>> encoded;
              for (std::size_t i = 0; i < docs.size(); ++i)
                  encoded.emplace_back(
                      encode(docs[i], vocab,
                             static_cast<std::size_t>(sequence_length)),
                      labels[i]);
              TrainConfig cfg;
              cfg.epochs = epochs;
              cfg.batch_size = batch_size;
              cfg.learning_rate = learning_rate;
              auto metrics = train(model, encoded, cfg);
              return py::make_tuple(model.to_json(), vocab.to_json(),
                                    metrics_to_jsonl(metrics));
          },
          py::arg("texts"), py::arg("labels"), py::arg("max_features") = 10000,
          py::arg("sequence_length") = 100, py::arg("d_embed") = 32,
          py::arg("d_hidden") = 32, py::arg("epochs") = 10,
          py::arg("batch_size") = 60, py::arg("learning_rate") = 1e-3,
          py::arg("seed") = 2024);
    m.def("predict_text_model",
          [](const std::string& model_json, const std::string& vocab_json,
             const std::string& text) {
              LstmModel model = LstmModel::from_json(model_json);
              Vocabulary vocab = Vocabulary::from_json(vocab_json);
              return forward(model,
                             encode(preprocess(text), vocab,
                                    static_cast<std::size_t>(
                                        model.dims.sequence_length)));
          },
          py::arg("model_json"), py::arg("vocab_json"), py::arg("text"));

    // ---- page parsing ------------------------------------------------------
    m.def("extract_body_text",
          [](const std::string& markup) { return extract_body_text(markup); },
          py::arg("markup"));
    m.def("extract_media_urls",
          [](const std::string& markup, const std::string& base_url) {
              auto media = extract_media_urls(markup, base_url);
              return py::make_tuple(media.images, media.videos);
          },
          py::arg("markup"), py::arg("base_url"));

    // ---- mock media container ----------------------------------------------
    m.def("mock_media_encode",
          [](const std::string& kind, const std::string& payload) {
              MediaKindTag tag;
              if (kind == "image") tag = MediaKindTag::image;
              else if (kind == "video") tag = MediaKindTag::video;
              else throw std::invalid_argument("kind must be image or video");
              auto bytes = mockmedia::encode(tag, payload);
              return py::bytes(reinterpret_cast<const char*>(bytes.data()),
                               bytes.size());
          },
          py::arg("kind"), py::arg("payload"));
    m.def("mock_media_decode", [](const py::bytes& data) {
        std::string s = data;
        std::vector<std::uint8_t> bytes(s.begin(), s.end());
        auto decoded = mockmedia::decode(bytes);
        return py::make_tuple(
            decoded.kind == MediaKindTag::image ? "image" : "video",
            decoded.payload);
    }, py::arg("data"));

    // ---- fixtures and synthetic data ---------------------------------------
    m.def("generate_fixtures",
          [](const std::string& output_dir, std::uint64_t seed) {
              py::list out;
              for (const auto& site : generate_fixtures(output_dir, seed)) {
                  py::dict d;
                  d["category"] = to_string(site.category);
                  d["directory"] = site.directory;
                  d["expected_label"] = site.expected_label;
                  d["images"] = site.image_count;
                  d["videos"] = site.video_count;
                  out.append(std::move(d));
              }
              return out;
          },
          py::arg("output_dir"), py::arg("seed") = 42);
    m.def("synthetic_url_dataset",
          [](std::size_t n, std::uint64_t seed) {
              auto dataset = generate_synthetic_url_dataset(n, seed);
              std::vector<std::vector<double>> matrix;
              std::vector<int> labels;
              for (auto& row : dataset.rows) {
                  matrix.push_back(std::move(row.values));
                  labels.push_back(*row.label);
              }
              return py::make_tuple(matrix, labels);
          },
          py::arg("n"), py::arg("seed") = 1);
    m.def("synthetic_text_corpus",
          [](std::size_t n, std::uint64_t seed) {
              auto corpus = generate_synthetic_text_corpus(n, seed);
              std::vector<std::string> texts;
              std::vector<int> labels;
              for (auto& [text, label] : corpus.rows) {
                  texts.push_back(std::move(text));
                  labels.push_back(label);
              }
              return py::make_tuple(texts, labels);
          },
          py::arg("n"), py::arg("seed") = 1);
    m.def("sample_phishing_url", &sample_phishing_url, py::arg("seed") = 0);
    m.def("sample_legitimate_url", &sample_legitimate_url, py::arg("seed") = 0);

    // ---- scanner -----------------------------------------------------------
    py::class_<PyScanner>(m, "Scanner")
        .def(py::init<const std::string&, const std::string&,
                      const std::string&, double, bool>(),
             py::arg("forest_json"), py::arg("lstm_json"),
             py::arg("vocab_json"), py::arg("threshold") = 0.5,
             py::arg("short_circuit") = false)
        .def("scan", &PyScanner::scan, py::arg("url"),
             "scan a URL and return the verdict as a JSON string");

    // typed exceptions surface as ValueError subclasses where natural
    py::register_exception<UrlParseError>(m, "UrlParseError",
                                          PyExc_ValueError);
    py::register_exception<TranscribeError>(m, "TranscribeError",
                                            PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}

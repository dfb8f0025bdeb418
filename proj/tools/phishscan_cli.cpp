// phishscan: train, scan, and evaluate the four-layer phishing detector.
// Exit codes: 0 success, 1 evaluation assertion failure, 2 configuration or
// input error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "phishscan/datasets.hpp"
#include "phishscan/errors.hpp"
#include "phishscan/evaluate.hpp"
#include "phishscan/fixture_server.hpp"
#include "phishscan/fixtures.hpp"
#include "phishscan/lstm_classifier.hpp"
#include "phishscan/orchestrator.hpp"
#include "phishscan/random_forest.hpp"
#include "phishscan/synthetic.hpp"
#include "phishscan/text_pipeline.hpp"
#include "phishscan/url_features.hpp"

#include <CLI11.hpp>

namespace fs = std::filesystem;
using namespace phishscan;

namespace {

volatile std::sig_atomic_t g_stop = 0;
void handle_signal(int) { g_stop = 1; }

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << content;
}

// Load the URL dataset from disk, or fall back to the synthetic substitute.
UrlDataset url_dataset_or_synthetic(const std::string& path,
                                    std::size_t synthetic_size,
                                    std::uint64_t synthetic_seed) {
    if (!path.empty()) return load_url_dataset(path);
    std::cerr << "no --dataset given; using the synthetic URL dataset ("
              << synthetic_size << " rows, seed " << synthetic_seed << ")\n";
    return generate_synthetic_url_dataset(synthetic_size, synthetic_seed);
}

TextDataset corpus_or_synthetic(const std::string& path,
                                std::size_t synthetic_size,
                                std::uint64_t synthetic_seed) {
    if (!path.empty()) return load_text_dataset(path);
    std::cerr << "no --corpus given; using the synthetic spam corpus ("
              << synthetic_size << " rows, seed " << synthetic_seed << ")\n";
    return generate_synthetic_text_corpus(synthetic_size, synthetic_seed);
}

Scanner build_scanner(const std::string& forest_path,
                      const std::string& lstm_path,
                      const std::string& vocab_path, ScanConfig config) {
    return Scanner(ForestModel::load(forest_path), FeatureSchema::builtin(),
                   LstmModel::load(lstm_path), Vocabulary::load(vocab_path),
                   std::move(config));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-layer phishing site scanner"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags win");
    app.allow_config_extras(CLI::config_extras_mode::ignore);

    // ---- gen-fixtures ------------------------------------------------------
    auto* gen = app.add_subcommand("gen-fixtures",
                                   "write the six-site fixture tree");
    std::string gen_output;
    std::uint64_t gen_seed = 42;
    gen->add_option("--output", gen_output, "output directory")->required();
    gen->add_option("--seed", gen_seed, "generation seed");

    // ---- serve -------------------------------------------------------------
    auto* serve = app.add_subcommand("serve",
                                     "serve a fixture tree over localhost");
    std::string serve_dir;
    int serve_port = 0;
    serve->add_option("--dir", serve_dir, "directory to serve")->required();
    serve->add_option("--port", serve_port, "port (0 = ephemeral)");

    // ---- select-features ---------------------------------------------------
    auto* select = app.add_subcommand(
        "select-features", "rank features by chi-squared score and keep top k");
    std::string sel_dataset, sel_output = "selection.json";
    int sel_k = 19;
    std::size_t sel_synth_size = 2000;
    std::uint64_t sel_synth_seed = 1;
    select->add_option("--dataset", sel_dataset, "labeled URL feature CSV");
    select->add_option("--k", sel_k, "number of features to keep");
    select->add_option("--output", sel_output, "selection JSON path");
    select->add_option("--synthetic-size", sel_synth_size,
                       "fallback dataset size");
    select->add_option("--synthetic-seed", sel_synth_seed,
                       "fallback dataset seed");

    // ---- train-url-model ---------------------------------------------------
    auto* turl = app.add_subcommand("train-url-model",
                                    "train the layer-1 random forest");
    std::string turl_dataset, turl_selection, turl_output = "forest.json";
    int turl_trees = 100, turl_depth = 30, turl_k = 19;
    std::uint64_t turl_seed = 0, turl_synth_seed = 1;
    std::size_t turl_synth_size = 2000;
    turl->add_option("--dataset", turl_dataset, "labeled URL feature CSV");
    turl->add_option("--selection", turl_selection,
                     "feature selection JSON (else top --k is computed)");
    turl->add_option("--k", turl_k, "features to keep when none supplied");
    turl->add_option("--trees", turl_trees, "number of trees");
    turl->add_option("--max-depth", turl_depth, "depth cap (-1 = unlimited)");
    turl->add_option("--seed", turl_seed, "training random state");
    turl->add_option("--output", turl_output, "model JSON path");
    turl->add_option("--synthetic-size", turl_synth_size,
                     "fallback dataset size");
    turl->add_option("--synthetic-seed", turl_synth_seed,
                     "fallback dataset seed");

    // ---- train-text-model --------------------------------------------------
    auto* ttxt = app.add_subcommand("train-text-model",
                                    "train the layer-4 text classifier");
    std::string ttxt_corpus, ttxt_output = "lstm.json",
                ttxt_vocab = "vocab.json", ttxt_metrics;
    std::size_t ttxt_max_features = 10000, ttxt_synth_size = 5572;
    int ttxt_seq = 100, ttxt_embed = 32, ttxt_hidden = 32;
    std::uint64_t ttxt_seed = 2024, ttxt_synth_seed = 1;
    TrainConfig ttxt_cfg;
    ttxt->add_option("--corpus", ttxt_corpus, "ham/spam CSV");
    ttxt->add_option("--max-features", ttxt_max_features, "vocabulary cap");
    ttxt->add_option("--sequence-length", ttxt_seq, "token window");
    ttxt->add_option("--embedding-dim", ttxt_embed, "embedding width");
    ttxt->add_option("--hidden-dim", ttxt_hidden, "recurrent state width");
    ttxt->add_option("--epochs", ttxt_cfg.epochs, "training epochs");
    ttxt->add_option("--batch-size", ttxt_cfg.batch_size, "minibatch size");
    ttxt->add_option("--learning-rate", ttxt_cfg.learning_rate, "step size");
    ttxt->add_option("--val-fraction", ttxt_cfg.val_fraction,
                     "stratified holdout fraction");
    ttxt->add_option("--shuffle-seed", ttxt_cfg.shuffle_seed, "shuffle seed");
    ttxt->add_option("--seed", ttxt_seed, "weight init seed");
    ttxt->add_option("--output", ttxt_output, "model JSON path");
    ttxt->add_option("--vocab-output", ttxt_vocab, "vocabulary JSON path");
    ttxt->add_option("--metrics", ttxt_metrics, "per-epoch metrics JSONL path");
    ttxt->add_option("--synthetic-size", ttxt_synth_size,
                     "fallback corpus size");
    ttxt->add_option("--synthetic-seed", ttxt_synth_seed,
                     "fallback corpus seed");

    // ---- scan --------------------------------------------------------------
    auto* scan = app.add_subcommand("scan", "scan one or more URLs");
    std::vector<std::string> scan_urls;
    std::string scan_forest = "forest.json", scan_lstm = "lstm.json",
                scan_vocab = "vocab.json";
    ScanConfig scan_cfg;
    scan->add_option("url", scan_urls, "URLs to scan")->required();
    scan->add_option("--forest", scan_forest, "layer-1 model JSON");
    scan->add_option("--lstm", scan_lstm, "layer-4 model JSON");
    scan->add_option("--vocab", scan_vocab, "vocabulary JSON");
    scan->add_option("--threshold", scan_cfg.layer4_threshold,
                     "layer-4 decision threshold");
    scan->add_flag("--short-circuit", scan_cfg.short_circuit,
                   "stop after a layer-1 detection");
    scan->add_option("--timeout-ms", scan_cfg.fetch.timeout_ms,
                     "fetch timeout");
    scan->add_option("--max-bytes", scan_cfg.fetch.max_bytes,
                     "page download cap");

    // ---- evaluate ----------------------------------------------------------
    auto* eval = app.add_subcommand(
        "evaluate", "serve a fixture tree and scan every site in it");
    std::string eval_fixtures, eval_forest = "forest.json",
                eval_lstm = "lstm.json", eval_vocab = "vocab.json",
                eval_json, eval_table;
    eval->add_option("--fixtures", eval_fixtures, "fixture tree directory")
        ->required();
    eval->add_option("--forest", eval_forest, "layer-1 model JSON");
    eval->add_option("--lstm", eval_lstm, "layer-4 model JSON");
    eval->add_option("--vocab", eval_vocab, "vocabulary JSON");
    eval->add_option("--json", eval_json, "write the full report here");
    eval->add_option("--table", eval_table, "write the text table here");

    // ---- depth-study -------------------------------------------------------
    auto* study = app.add_subcommand(
        "depth-study", "held-out accuracy across a depth x seed grid");
    std::string study_dataset, study_output;
    std::vector<int> study_depths = {10, 20, 30};
    std::vector<std::uint64_t> study_seeds = {0, 17};
    int study_trees = 100, study_k = 19;
    std::size_t study_synth_size = 2000;
    std::uint64_t study_synth_seed = 1, study_split_seed = 0;
    study->add_option("--dataset", study_dataset, "labeled URL feature CSV");
    study->add_option("--depths", study_depths, "depth caps to try");
    study->add_option("--seeds", study_seeds, "random states to try");
    study->add_option("--trees", study_trees, "trees per forest");
    study->add_option("--k", study_k, "chi-squared features to keep");
    study->add_option("--split-seed", study_split_seed, "80/20 split seed");
    study->add_option("--output", study_output, "grid JSON path");
    study->add_option("--synthetic-size", study_synth_size,
                      "fallback dataset size");
    study->add_option("--synthetic-seed", study_synth_seed,
                      "fallback dataset seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            auto sites = generate_fixtures(gen_output, gen_seed);
            for (const auto& site : sites)
                std::cout << site.directory << " (label "
                          << site.expected_label << ", " << site.image_count
                          << " images, " << site.video_count << " videos)\n";
            std::cout << "manifest: " << gen_output << "/manifest.json\n";
        } else if (*serve) {
            FixtureServer server;
            server.start(serve_dir, serve_port);
            std::cout << "serving " << serve_dir << " at " << server.base_url()
                      << " (ctrl-c to stop)" << std::endl;
            std::signal(SIGINT, handle_signal);
            std::signal(SIGTERM, handle_signal);
            while (!g_stop)
                std::this_thread::sleep_for(std::chrono::milliseconds(100));
            server.stop();
        } else if (*select) {
            auto dataset = url_dataset_or_synthetic(sel_dataset, sel_synth_size,
                                                    sel_synth_seed);
            auto selection = select_top_k(chi2_scores(dataset.rows), sel_k);
            selection.save(sel_output);
            for (int idx : selection.selected_indices)
                std::cout << dataset.schema.at(static_cast<std::size_t>(idx)).name
                          << " (" << selection.scores[static_cast<std::size_t>(idx)]
                          << ")\n";
            std::cout << "selection written to " << sel_output << "\n";
        } else if (*turl) {
            auto dataset = url_dataset_or_synthetic(
                turl_dataset, turl_synth_size, turl_synth_seed);
            FeatureSelection selection =
                turl_selection.empty()
                    ? select_top_k(chi2_scores(dataset.rows), turl_k)
                    : FeatureSelection::load(turl_selection);
            ForestModel model = train_forest(dataset.rows, selection,
                                             turl_trees, turl_depth, turl_seed);
            model.save(turl_output);
            std::cout << "forest (" << turl_trees << " trees, depth "
                      << turl_depth << ") written to " << turl_output << "\n";
        } else if (*ttxt) {
            auto corpus = corpus_or_synthetic(ttxt_corpus, ttxt_synth_size,
                                              ttxt_synth_seed);
            std::vector<std::vector<std::string>> docs;
            for (const auto& [text, label] : corpus.rows)
                docs.push_back(preprocess(text));
            Vocabulary vocab = Vocabulary::build(docs, ttxt_max_features);
            vocab.save(ttxt_vocab);

            LstmDims dims;
            dims.vocab_size = static_cast<int>(vocab.size());
            dims.d_embed = ttxt_embed;
            dims.d_hidden = ttxt_hidden;
            dims.sequence_length = ttxt_seq;
            LstmModel model = LstmModel::init(dims, ttxt_seed);
            model.vocabulary_file = ttxt_vocab;

            std::vector<std::pair<TokenSequence, int>> encoded;
            for (std::size_t i = 0; i < corpus.rows.size(); ++i)
                encoded.emplace_back(
                    encode(docs[i], vocab,
                           static_cast<std::size_t>(ttxt_seq)),
                    corpus.rows[i].second);
            auto metrics = train(model, encoded, ttxt_cfg);
            model.save(ttxt_output);
            if (!ttxt_metrics.empty())
                write_text(ttxt_metrics, metrics_to_jsonl(metrics));

            const auto& last = metrics.back();
            std::cout << corpus.rows.size() << " rows ("
                      << corpus.unique_texts << " unique), vocabulary "
                      << vocab.size() << "\n"
                      << "final epoch: train loss " << last.train_loss
                      << ", train acc " << last.train_accuracy
                      << ", val loss " << last.val_loss << ", val acc "
                      << last.val_accuracy << "\n"
                      << "model written to " << ttxt_output << "\n";
        } else if (*scan) {
            Scanner scanner =
                build_scanner(scan_forest, scan_lstm, scan_vocab, scan_cfg);
            for (const auto& url : scan_urls)
                std::cout << scanner.scan(url).to_json() << "\n";
        } else if (*eval) {
            auto sites = load_fixtures(eval_fixtures);
            FixtureServer server;
            server.start(eval_fixtures);
            Scanner scanner =
                build_scanner(eval_forest, eval_lstm, eval_vocab, ScanConfig{});
            EvaluationReport report =
                evaluate_end_to_end(sites, server.base_url(), scanner);
            server.stop();

            report.model_hashes["forest"] = fnv1a_hex(read_file(eval_forest));
            report.model_hashes["lstm"] = fnv1a_hex(read_file(eval_lstm));
            report.model_hashes["vocabulary"] = fnv1a_hex(read_file(eval_vocab));

            if (!eval_json.empty()) write_text(eval_json, report.to_json());
            if (!eval_table.empty()) write_text(eval_table, report.to_table());
            std::cout << report.to_table();
            if (!report.all_criteria_met()) {
                std::cerr << "evaluation failed: " << report.false_positives
                          << " false positive(s), " << report.missed_phishing
                          << " missed phishing site(s)\n";
                return 1;
            }
        } else if (*study) {
            auto dataset = url_dataset_or_synthetic(
                study_dataset, study_synth_size, study_synth_seed);
            auto selection = select_top_k(chi2_scores(dataset.rows), study_k);
            std::vector<std::pair<int, std::uint64_t>> grid;
            for (int d : study_depths)
                for (auto s : study_seeds) grid.emplace_back(d, s);
            DepthSeedStudy result = depth_seed_study(
                dataset.rows, selection, grid, study_trees, study_split_seed);
            std::cout << result.to_table();
            if (!study_output.empty()) write_text(study_output, result.to_json());
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const IngestError& e) {
        std::cerr << "ingestion error: " << e.what() << "\n";
        return 2;
    } catch (const TrainingError& e) {
        std::cerr << "training error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

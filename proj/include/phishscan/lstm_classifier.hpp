#ifndef PHISHSCAN_LSTM_CLASSIFIER_HPP
#define PHISHSCAN_LSTM_CLASSIFIER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phishscan/text_pipeline.hpp"

namespace phishscan {

struct LstmDims {
    int vocab_size = 0;       // V; embedding has V+1 rows (row 0 = padding)
    int d_embed = 32;
    int d_hidden = 32;
    int sequence_length = 100;
};

// Embedding + one LSTM layer + one dense sigmoid unit.
struct LstmModel {
    Eigen::MatrixXd embedding;            // (V+1) x d_embed, row 0 fixed zero
    Eigen::MatrixXd Wi, Wf, Wg, Wo;       // d_embed x d_hidden
    Eigen::MatrixXd Ui, Uf, Ug, Uo;       // d_hidden x d_hidden
    Eigen::VectorXd bi, bf, bg, bo;       // d_hidden
    Eigen::VectorXd w_out;                // d_hidden
    double b_out = 0.0;
    LstmDims dims;
    std::string vocabulary_file;          // reference to the vocab JSON

    // uniform(+-1/sqrt(fan_in)) init from the seeded generator;
    // forget-gate bias starts at 1.0
    static LstmModel init(const LstmDims& dims, std::uint64_t seed);

    std::string to_json() const;
    static LstmModel from_json(const std::string& text);
    void save(const std::string& path) const;
    static LstmModel load(const std::string& path);
};

struct TrainConfig {
    int epochs = 10;
    int batch_size = 60;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t shuffle_seed = 0;
    double val_fraction = 0.2; // stratified holdout
};

double forward(const LstmModel& model, const TokenSequence& sequence);

// binary cross-entropy with the prediction clamped to [eps, 1-eps]
double bce_loss(double y_hat, int y);

struct EpochMetrics {
    int epoch;
    double train_loss, train_accuracy;
    double val_loss, val_accuracy;
};

std::string metrics_to_jsonl(const std::vector<EpochMetrics>& metrics);

std::vector<EpochMetrics> train(
    LstmModel& model,
    const std::vector<std::pair<TokenSequence, int>>& dataset,
    const TrainConfig& config);

// max relative error between analytic and central-finite-difference
// gradients over every parameter tensor
double gradient_check(const LstmModel& model,
                      const std::vector<std::pair<TokenSequence, int>>& batch);

} // namespace phishscan

#endif

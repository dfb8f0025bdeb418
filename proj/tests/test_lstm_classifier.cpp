#include <doctest.h>

#include <cmath>
#include <vector>

#include "phishscan/errors.hpp"
#include "phishscan/lstm_classifier.hpp"
#include "phishscan/rng.hpp"

using namespace phishscan;

namespace {

TokenSequence seq(std::vector<int> indices) {
    TokenSequence s;
    s.original_length = indices.size();
    s.indices = std::move(indices);
    return s;
}

LstmModel zero_model(const LstmDims& dims) {
    LstmModel m = LstmModel::init(dims, 0);
    m.embedding.setZero();
    m.Wi.setZero(); m.Wf.setZero(); m.Wg.setZero(); m.Wo.setZero();
    m.Ui.setZero(); m.Uf.setZero(); m.Ug.setZero(); m.Uo.setZero();
    m.bi.setZero(); m.bf.setZero(); m.bg.setZero(); m.bo.setZero();
    m.w_out.setZero();
    m.b_out = 0;
    return m;
}

// Scalar step-by-step forward oracle for d_hidden=2, d_embed=1, two steps.
// Written independently of the Eigen implementation.
double hand_forward(const std::vector<double>& x, // per-step embedded input
                    const double Wi[2], const double Wf[2], const double Wg[2],
                    const double Wo[2], const double Ui[2][2],
                    const double Uf[2][2], const double Ug[2][2],
                    const double Uo[2][2], const double bi[2],
                    const double bf[2], const double bg[2], const double bo[2],
                    const double w_out[2], double b_out) {
    auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    double h[2] = {0, 0}, c[2] = {0, 0};
    for (double xt : x) {
        double i[2], f[2], g[2], o[2], nc[2], nh[2];
        for (int k = 0; k < 2; ++k) {
            double ai = Wi[k] * xt + Ui[0][k] * h[0] + Ui[1][k] * h[1] + bi[k];
            double af = Wf[k] * xt + Uf[0][k] * h[0] + Uf[1][k] * h[1] + bf[k];
            double ag = Wg[k] * xt + Ug[0][k] * h[0] + Ug[1][k] * h[1] + bg[k];
            double ao = Wo[k] * xt + Uo[0][k] * h[0] + Uo[1][k] * h[1] + bo[k];
            i[k] = sig(ai); f[k] = sig(af); g[k] = std::tanh(ag); o[k] = sig(ao);
            nc[k] = f[k] * c[k] + i[k] * g[k];
            nh[k] = o[k] * std::tanh(nc[k]);
        }
        for (int k = 0; k < 2; ++k) { c[k] = nc[k]; h[k] = nh[k]; }
    }
    return sig(w_out[0] * h[0] + w_out[1] * h[1] + b_out);
}

std::vector<std::pair<TokenSequence, int>> toy_dataset(int sequence_length) {
    // token 1 predicts class 1, token 2 predicts class 0
    std::vector<std::pair<TokenSequence, int>> data;
    for (int i = 0; i < 4; ++i) {
        std::vector<int> pos(static_cast<std::size_t>(sequence_length), 0);
        pos.back() = 1;
        pos[pos.size() - 2] = (i % 2) ? 3 : 4;
        data.emplace_back(seq(pos), 1);
        std::vector<int> neg(static_cast<std::size_t>(sequence_length), 0);
        neg.back() = 2;
        neg[neg.size() - 2] = (i % 2) ? 4 : 5;
        data.emplace_back(seq(neg), 0);
    }
    return data;
}

} // namespace

TEST_CASE("all-zero weights give probability one half") {
    LstmDims dims{5, 3, 4, 6};
    LstmModel m = zero_model(dims);
    CHECK(forward(m, seq({0, 1, 2, 3, 4, 0})) == doctest::Approx(0.5));
    CHECK(forward(m, seq({0, 0, 0, 0, 0, 0})) == doctest::Approx(0.5));
}

TEST_CASE("all-padding input depends only on biases") {
    LstmDims dims{5, 3, 4, 6};
    LstmModel a = LstmModel::init(dims, 123);
    LstmModel b = LstmModel::init(dims, 456);
    // same biases and head, different everything else
    b.bi = a.bi; b.bf = a.bf; b.bg = a.bg; b.bo = a.bo;
    b.w_out = a.w_out; b.b_out = a.b_out;
    b.Ui = a.Ui; b.Uf = a.Uf; b.Ug = a.Ug; b.Uo = a.Uo;
    auto padding = seq({0, 0, 0, 0, 0, 0});
    CHECK(forward(a, padding) == doctest::Approx(forward(b, padding)));
}

TEST_CASE("forward matches the hand-rolled two-step oracle") {
    LstmDims dims{2, 1, 2, 2};
    LstmModel m = zero_model(dims);
    // hand-set weights
    m.embedding(1, 0) = 0.5;
    m.embedding(2, 0) = -1.0;
    double Wi[2] = {0.3, -0.2}, Wf[2] = {0.1, 0.4}, Wg[2] = {0.7, -0.5},
           Wo[2] = {-0.3, 0.6};
    double Ui[2][2] = {{0.1, 0.2}, {-0.1, 0.05}};
    double Uf[2][2] = {{0.2, -0.3}, {0.15, 0.1}};
    double Ug[2][2] = {{-0.2, 0.25}, {0.3, -0.15}};
    double Uo[2][2] = {{0.05, 0.1}, {-0.25, 0.2}};
    double bi[2] = {0.01, -0.02}, bf[2] = {1.0, 1.0}, bg[2] = {0.03, 0.0},
           bo[2] = {-0.01, 0.02};
    double w_out[2] = {0.8, -0.6};
    double b_out = 0.05;
    for (int k = 0; k < 2; ++k) {
        m.Wi(0, k) = Wi[k]; m.Wf(0, k) = Wf[k]; m.Wg(0, k) = Wg[k]; m.Wo(0, k) = Wo[k];
        m.bi(k) = bi[k]; m.bf(k) = bf[k]; m.bg(k) = bg[k]; m.bo(k) = bo[k];
        m.w_out(k) = w_out[k];
        for (int r = 0; r < 2; ++r) {
            m.Ui(r, k) = Ui[r][k]; m.Uf(r, k) = Uf[r][k];
            m.Ug(r, k) = Ug[r][k]; m.Uo(r, k) = Uo[r][k];
        }
    }
    m.b_out = b_out;

    double expected = hand_forward({0.5, -1.0}, Wi, Wf, Wg, Wo, Ui, Uf, Ug, Uo,
                                   bi, bf, bg, bo, w_out, b_out);
    CHECK(forward(m, seq({1, 2})) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("loss closed forms") {
    CHECK(bce_loss(0.5, 0) == doctest::Approx(std::log(2.0)));
    CHECK(bce_loss(0.5, 1) == doctest::Approx(std::log(2.0)));
    CHECK(bce_loss(1.0 - 1e-9, 1) == doctest::Approx(0.0).epsilon(1e-5));
    double batch = (bce_loss(0.9, 1) + bce_loss(0.2, 0)) / 2;
    CHECK(batch == doctest::Approx((-std::log(0.9) - std::log(0.8)) / 2));
}

TEST_CASE("gate activations stay in range and outputs stay finite") {
    LstmDims dims{8, 4, 4, 10};
    LstmModel m = LstmModel::init(dims, 2024);
    SplitMix64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> idx(10);
        for (auto& v : idx) v = static_cast<int>(rng.below(9));
        double p = forward(m, seq(idx));
        CHECK(std::isfinite(p));
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("sequence length mismatch raises a dimension error") {
    LstmDims dims{5, 3, 4, 6};
    LstmModel m = LstmModel::init(dims, 1);
    CHECK_THROWS_AS(forward(m, seq({1, 2})), std::invalid_argument);
}

TEST_CASE("gradient check on small random models") {
    SplitMix64 seeds(4711);
    for (int trial = 0; trial < 3; ++trial) {
        LstmDims dims{6, 3, 4, 5};
        LstmModel m = LstmModel::init(dims, seeds.next());
        std::vector<std::pair<TokenSequence, int>> batch = {
            {seq({0, 1, 2, 3, 4}), 1},
            {seq({5, 6, 0, 1, 2}), 0},
            {seq({0, 0, 0, 6, 5}), 1},
        };
        double err = gradient_check(m, batch);
        CHECK(err < 1e-4);
        CHECK(gradient_check(m, batch) == err); // deterministic
    }
}

TEST_CASE("gradient check on the zero model agrees at shared zeros") {
    LstmDims dims{4, 2, 3, 4};
    LstmModel m = zero_model(dims);
    std::vector<std::pair<TokenSequence, int>> batch = {{seq({1, 2, 3, 4}), 1}};
    CHECK(gradient_check(m, batch) < 1e-4);
}

TEST_CASE("toy set overfits and training is deterministic") {
    LstmDims dims{6, 4, 6, 6};
    auto data = toy_dataset(dims.sequence_length);

    TrainConfig cfg;
    cfg.epochs = 200;
    cfg.batch_size = 4;
    cfg.learning_rate = 1e-2;
    cfg.shuffle_seed = 3;
    cfg.val_fraction = 0.0; // all eight samples train

    LstmModel m = LstmModel::init(dims, 55);
    auto metrics = train(m, data, cfg);
    REQUIRE(metrics.size() == 200);
    CHECK(metrics.back().train_loss < 0.05);

    // monotone non-increasing after epoch 5 within a 1e-3 slack band
    for (std::size_t e = 5; e + 1 < metrics.size(); ++e)
        CHECK(metrics[e + 1].train_loss <= metrics[e].train_loss + 1e-3);

    LstmModel m2 = LstmModel::init(dims, 55);
    auto metrics2 = train(m2, data, cfg);
    for (std::size_t e = 0; e < metrics.size(); ++e) {
        CHECK(metrics[e].train_loss == metrics2[e].train_loss);
        CHECK(metrics[e].train_accuracy == metrics2[e].train_accuracy);
    }
    CHECK(m.to_json() == m2.to_json());
}

TEST_CASE("training rejects degenerate inputs") {
    LstmDims dims{3, 2, 2, 3};
    LstmModel m = LstmModel::init(dims, 1);
    std::vector<std::pair<TokenSequence, int>> one_class = {
        {seq({1, 2, 3}), 1}, {seq({3, 2, 1}), 1}};
    TrainConfig cfg;
    CHECK_THROWS_AS(train(m, one_class, cfg), TrainingError);
}

TEST_CASE("model JSON round-trip preserves the forward pass") {
    LstmDims dims{6, 3, 4, 5};
    LstmModel m = LstmModel::init(dims, 77);
    m.vocabulary_file = "vocab.json";
    LstmModel restored = LstmModel::from_json(m.to_json());
    CHECK(restored.vocabulary_file == "vocab.json");
    auto s = seq({1, 2, 3, 4, 5});
    CHECK(forward(restored, s) == forward(m, s));
}

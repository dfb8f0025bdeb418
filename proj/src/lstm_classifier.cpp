#include "phishscan/lstm_classifier.hpp"
#include "phishscan/errors.hpp"
#include "phishscan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace phishscan {

namespace {

constexpr double kProbEps = 1e-7; // clamp for the cross-entropy head

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void fill_uniform(Eigen::MatrixXd& m, double scale, SplitMix64& rng) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            m(r, c) = (2.0 * rng.uniform() - 1.0) * scale;
}

void fill_uniform(Eigen::VectorXd& v, double scale, SplitMix64& rng) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = (2.0 * rng.uniform() - 1.0) * scale;
}

// gradients / optimizer moments share the model's tensor layout
struct Tensors {
    Eigen::MatrixXd embedding, Wi, Wf, Wg, Wo, Ui, Uf, Ug, Uo;
    Eigen::VectorXd bi, bf, bg, bo, w_out;
    double b_out = 0.0;

    static Tensors zeros_like(const LstmModel& m) {
        Tensors t;
        t.embedding = Eigen::MatrixXd::Zero(m.embedding.rows(), m.embedding.cols());
        auto zm = [](const Eigen::MatrixXd& x) {
            return Eigen::MatrixXd::Zero(x.rows(), x.cols()).eval();
        };
        auto zv = [](const Eigen::VectorXd& x) {
            return Eigen::VectorXd::Zero(x.size()).eval();
        };
        t.Wi = zm(m.Wi); t.Wf = zm(m.Wf); t.Wg = zm(m.Wg); t.Wo = zm(m.Wo);
        t.Ui = zm(m.Ui); t.Uf = zm(m.Uf); t.Ug = zm(m.Ug); t.Uo = zm(m.Uo);
        t.bi = zv(m.bi); t.bf = zv(m.bf); t.bg = zv(m.bg); t.bo = zv(m.bo);
        t.w_out = zv(m.w_out);
        t.b_out = 0.0;
        return t;
    }

    template <typename F>
    void for_each_pair(Tensors& other, F&& f) {
        f(embedding, other.embedding);
        f(Wi, other.Wi); f(Wf, other.Wf); f(Wg, other.Wg); f(Wo, other.Wo);
        f(Ui, other.Ui); f(Uf, other.Uf); f(Ug, other.Ug); f(Uo, other.Uo);
        f(bi, other.bi); f(bf, other.bf); f(bg, other.bg); f(bo, other.bo);
        f(w_out, other.w_out);
    }
};

struct BatchCache {
    std::vector<Eigen::MatrixXd> X, I, F, G, O, C, TC, H; // one per step
    std::vector<std::vector<int>> tokens;                 // [step][sample]
    Eigen::VectorXd y_hat;
};

Eigen::VectorXd forward_batch(const LstmModel& m,
                              const std::vector<const TokenSequence*>& batch,
                              BatchCache* cache) {
    const int B = static_cast<int>(batch.size());
    const int T = m.dims.sequence_length;
    const int E = m.dims.d_embed;
    const int Hd = m.dims.d_hidden;

    for (const auto* seq : batch)
        if (static_cast<int>(seq->indices.size()) != T)
            throw std::invalid_argument("forward: sequence length mismatch");

    Eigen::MatrixXd H_prev = Eigen::MatrixXd::Zero(B, Hd);
    Eigen::MatrixXd C_prev = Eigen::MatrixXd::Zero(B, Hd);
    if (cache) {
        cache->X.resize(T); cache->I.resize(T); cache->F.resize(T);
        cache->G.resize(T); cache->O.resize(T); cache->C.resize(T);
        cache->TC.resize(T); cache->H.resize(T);
        cache->tokens.assign(T, std::vector<int>(B, 0));
    }

    Eigen::MatrixXd X(B, E);
    for (int t = 0; t < T; ++t) {
        for (int b = 0; b < B; ++b) {
            int idx = batch[b]->indices[static_cast<std::size_t>(t)];
            X.row(b) = m.embedding.row(idx); // row 0 is the zero padding row
            if (cache) cache->tokens[t][b] = idx;
        }
        Eigen::MatrixXd I = ((X * m.Wi + H_prev * m.Ui).rowwise() + m.bi.transpose())
                                .unaryExpr([](double v) { return sigmoid(v); });
        Eigen::MatrixXd F = ((X * m.Wf + H_prev * m.Uf).rowwise() + m.bf.transpose())
                                .unaryExpr([](double v) { return sigmoid(v); });
        Eigen::MatrixXd G = ((X * m.Wg + H_prev * m.Ug).rowwise() + m.bg.transpose())
                                .array().tanh().matrix();
        Eigen::MatrixXd O = ((X * m.Wo + H_prev * m.Uo).rowwise() + m.bo.transpose())
                                .unaryExpr([](double v) { return sigmoid(v); });
        Eigen::MatrixXd C = F.cwiseProduct(C_prev) + I.cwiseProduct(G);
        Eigen::MatrixXd TC = C.array().tanh().matrix();
        Eigen::MatrixXd Hm = O.cwiseProduct(TC);

        if (cache) {
            cache->X[t] = X; cache->I[t] = I; cache->F[t] = F; cache->G[t] = G;
            cache->O[t] = O; cache->C[t] = C; cache->TC[t] = TC; cache->H[t] = Hm;
        }
        H_prev = std::move(Hm);
        C_prev = std::move(C);
    }

    Eigen::VectorXd z = H_prev * m.w_out;
    z.array() += m.b_out;
    Eigen::VectorXd y = z.unaryExpr([](double v) { return sigmoid(v); });
    if (cache) cache->y_hat = y;
    return y;
}

// mean-loss gradient over the batch, written into `grad`
void backward_batch(const LstmModel& m, const BatchCache& cache,
                    const std::vector<int>& labels, Tensors& grad) {
    const int B = static_cast<int>(labels.size());
    const int T = m.dims.sequence_length;
    const int Hd = m.dims.d_hidden;

    // sigmoid + BCE head: dL/dz = (y_hat - y) / B
    Eigen::VectorXd dz(B);
    for (int b = 0; b < B; ++b)
        dz(b) = (cache.y_hat(b) - labels[static_cast<std::size_t>(b)]) / B;

    const Eigen::MatrixXd& H_last = cache.H[static_cast<std::size_t>(T - 1)];
    grad.w_out += H_last.transpose() * dz;
    grad.b_out += dz.sum();

    Eigen::MatrixXd dH = dz * m.w_out.transpose(); // B x H
    Eigen::MatrixXd dC = Eigen::MatrixXd::Zero(B, Hd);

    for (int t = T - 1; t >= 0; --t) {
        auto ti = static_cast<std::size_t>(t);
        const auto& I = cache.I[ti]; const auto& F = cache.F[ti];
        const auto& G = cache.G[ti]; const auto& O = cache.O[ti];
        const auto& TC = cache.TC[ti]; const auto& X = cache.X[ti];
        const Eigen::MatrixXd& C_prev =
            t > 0 ? cache.C[ti - 1]
                  : Eigen::MatrixXd::Zero(B, Hd).eval();
        const Eigen::MatrixXd& H_prev =
            t > 0 ? cache.H[ti - 1]
                  : Eigen::MatrixXd::Zero(B, Hd).eval();

        Eigen::MatrixXd dA_o = dH.cwiseProduct(TC)
                                   .cwiseProduct(O)
                                   .cwiseProduct((1.0 - O.array()).matrix());
        dC += dH.cwiseProduct(O).cwiseProduct(
            (1.0 - TC.array().square()).matrix());

        Eigen::MatrixXd dA_i = dC.cwiseProduct(G)
                                   .cwiseProduct(I)
                                   .cwiseProduct((1.0 - I.array()).matrix());
        Eigen::MatrixXd dA_g = dC.cwiseProduct(I).cwiseProduct(
            (1.0 - G.array().square()).matrix());
        Eigen::MatrixXd dA_f = dC.cwiseProduct(C_prev)
                                   .cwiseProduct(F)
                                   .cwiseProduct((1.0 - F.array()).matrix());

        grad.Wi += X.transpose() * dA_i;
        grad.Wf += X.transpose() * dA_f;
        grad.Wg += X.transpose() * dA_g;
        grad.Wo += X.transpose() * dA_o;
        grad.Ui += H_prev.transpose() * dA_i;
        grad.Uf += H_prev.transpose() * dA_f;
        grad.Ug += H_prev.transpose() * dA_g;
        grad.Uo += H_prev.transpose() * dA_o;
        grad.bi += dA_i.colwise().sum().transpose();
        grad.bf += dA_f.colwise().sum().transpose();
        grad.bg += dA_g.colwise().sum().transpose();
        grad.bo += dA_o.colwise().sum().transpose();

        Eigen::MatrixXd dX = dA_i * m.Wi.transpose() + dA_f * m.Wf.transpose() +
                             dA_g * m.Wg.transpose() + dA_o * m.Wo.transpose();
        for (int b = 0; b < B; ++b) {
            int idx = cache.tokens[ti][static_cast<std::size_t>(b)];
            if (idx != 0) grad.embedding.row(idx) += dX.row(b);
        }

        dH = dA_i * m.Ui.transpose() + dA_f * m.Uf.transpose() +
             dA_g * m.Ug.transpose() + dA_o * m.Uo.transpose();
        dC = dC.cwiseProduct(F);
    }
}

double batch_mean_loss(const Eigen::VectorXd& y_hat, const std::vector<int>& labels) {
    double total = 0;
    for (int b = 0; b < y_hat.size(); ++b)
        total += bce_loss(y_hat(b), labels[static_cast<std::size_t>(b)]);
    return total / static_cast<double>(y_hat.size());
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    Eigen::MatrixXd m(j.size(), j.empty() ? 0 : j[0].size());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            m(r, c) = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]
                          .get<double>();
    return m;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
    Eigen::VectorXd v(j.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = j[static_cast<std::size_t>(i)].get<double>();
    return v;
}

} // namespace

LstmModel LstmModel::init(const LstmDims& dims, std::uint64_t seed) {
    LstmModel m;
    m.dims = dims;
    SplitMix64 rng(seed);
    const int V = dims.vocab_size, E = dims.d_embed, H = dims.d_hidden;
    const double se = 1.0 / std::sqrt(static_cast<double>(E));
    const double sh = 1.0 / std::sqrt(static_cast<double>(H));

    m.embedding = Eigen::MatrixXd::Zero(V + 1, E);
    for (int r = 1; r <= V; ++r)
        for (int c = 0; c < E; ++c)
            m.embedding(r, c) = (2.0 * rng.uniform() - 1.0) * se;

    auto initW = [&](Eigen::MatrixXd& w) {
        w.resize(E, H);
        fill_uniform(w, se, rng);
    };
    auto initU = [&](Eigen::MatrixXd& u) {
        u.resize(H, H);
        fill_uniform(u, sh, rng);
    };
    initW(m.Wi); initW(m.Wf); initW(m.Wg); initW(m.Wo);
    initU(m.Ui); initU(m.Uf); initU(m.Ug); initU(m.Uo);

    m.bi = Eigen::VectorXd::Zero(H);
    m.bf = Eigen::VectorXd::Constant(H, 1.0); // keeps c_t alive early on
    m.bg = Eigen::VectorXd::Zero(H);
    m.bo = Eigen::VectorXd::Zero(H);
    m.w_out.resize(H);
    fill_uniform(m.w_out, sh, rng);
    m.b_out = 0.0;
    return m;
}

double forward(const LstmModel& model, const TokenSequence& sequence) {
    std::vector<const TokenSequence*> batch{&sequence};
    return forward_batch(model, batch, nullptr)(0);
}

double bce_loss(double y_hat, int y) {
    double p = std::clamp(y_hat, kProbEps, 1.0 - kProbEps);
    return -(y * std::log(p) + (1 - y) * std::log(1.0 - p));
}

std::string metrics_to_jsonl(const std::vector<EpochMetrics>& metrics) {
    std::ostringstream os;
    for (const auto& m : metrics) {
        nlohmann::json j{{"epoch", m.epoch},
                         {"train_loss", m.train_loss},
                         {"train_accuracy", m.train_accuracy},
                         {"val_loss", m.val_loss},
                         {"val_accuracy", m.val_accuracy}};
        os << j.dump() << '\n';
    }
    return os.str();
}

std::vector<EpochMetrics> train(
    LstmModel& model,
    const std::vector<std::pair<TokenSequence, int>>& dataset,
    const TrainConfig& config) {
    if (config.epochs < 1 || config.batch_size < 1)
        throw TrainingError("train: epochs and batch_size must be >= 1");

    // stratified holdout split
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        int y = dataset[i].second;
        if (y != 0 && y != 1) throw TrainingError("train: labels must be 0/1");
        by_class[static_cast<std::size_t>(y)].push_back(i);
    }
    if (by_class[0].empty() || by_class[1].empty())
        throw TrainingError("train: both classes required");

    std::vector<std::size_t> train_idx, val_idx;
    for (int c = 0; c < 2; ++c) {
        auto& idx = by_class[c];
        SplitMix64 rng(mix_seed(config.shuffle_seed, 1000 + c));
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.below(i)]);
        std::size_t n_val = static_cast<std::size_t>(
            std::llround(config.val_fraction * static_cast<double>(idx.size())));
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < n_val ? val_idx : train_idx).push_back(idx[i]);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(val_idx.begin(), val_idx.end());

    Tensors m1 = Tensors::zeros_like(model); // first Adam moment
    Tensors m2 = Tensors::zeros_like(model); // second Adam moment
    long step = 0;

    auto adam_update = [&](Tensors& grad) {
        ++step;
        const double b1 = config.beta1, b2 = config.beta2;
        double bc1 = 1.0 - std::pow(b1, static_cast<double>(step));
        double bc2 = 1.0 - std::pow(b2, static_cast<double>(step));
        double lr = config.learning_rate;
        double eps = config.adam_eps;

        auto update = [&](auto& param, auto& g, auto& mom1, auto& mom2) {
            mom1 = b1 * mom1 + (1.0 - b1) * g;
            mom2.array() = b2 * mom2.array() + (1.0 - b2) * g.array().square();
            param.array() -= lr * (mom1.array() / bc1) /
                             ((mom2.array() / bc2).sqrt() + eps);
        };
        update(model.embedding, grad.embedding, m1.embedding, m2.embedding);
        model.embedding.row(0).setZero(); // padding row stays frozen
        update(model.Wi, grad.Wi, m1.Wi, m2.Wi);
        update(model.Wf, grad.Wf, m1.Wf, m2.Wf);
        update(model.Wg, grad.Wg, m1.Wg, m2.Wg);
        update(model.Wo, grad.Wo, m1.Wo, m2.Wo);
        update(model.Ui, grad.Ui, m1.Ui, m2.Ui);
        update(model.Uf, grad.Uf, m1.Uf, m2.Uf);
        update(model.Ug, grad.Ug, m1.Ug, m2.Ug);
        update(model.Uo, grad.Uo, m1.Uo, m2.Uo);
        update(model.bi, grad.bi, m1.bi, m2.bi);
        update(model.bf, grad.bf, m1.bf, m2.bf);
        update(model.bg, grad.bg, m1.bg, m2.bg);
        update(model.bo, grad.bo, m1.bo, m2.bo);
        update(model.w_out, grad.w_out, m1.w_out, m2.w_out);
        {
            double g = grad.b_out;
            m1.b_out = b1 * m1.b_out + (1.0 - b1) * g;
            m2.b_out = b2 * m2.b_out + (1.0 - b2) * g * g;
            model.b_out -= lr * (m1.b_out / bc1) /
                           (std::sqrt(m2.b_out / bc2) + eps);
        }
    };

    auto evaluate = [&](const std::vector<std::size_t>& indices,
                        double& loss, double& acc) {
        double total_loss = 0;
        std::size_t correct = 0;
        const std::size_t B = 256;
        for (std::size_t start = 0; start < indices.size(); start += B) {
            std::size_t end = std::min(indices.size(), start + B);
            std::vector<const TokenSequence*> batch;
            std::vector<int> labels;
            for (std::size_t i = start; i < end; ++i) {
                batch.push_back(&dataset[indices[i]].first);
                labels.push_back(dataset[indices[i]].second);
            }
            Eigen::VectorXd y = forward_batch(model, batch, nullptr);
            for (Eigen::Index b = 0; b < y.size(); ++b) {
                total_loss += bce_loss(y(b), labels[static_cast<std::size_t>(b)]);
                if ((y(b) >= 0.5 ? 1 : 0) == labels[static_cast<std::size_t>(b)])
                    ++correct;
            }
        }
        loss = total_loss / static_cast<double>(indices.size());
        acc = static_cast<double>(correct) / static_cast<double>(indices.size());
    };

    std::vector<EpochMetrics> metrics;
    std::vector<std::size_t> order(train_idx);
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        SplitMix64 rng(mix_seed(config.shuffle_seed, static_cast<std::uint64_t>(epoch)));
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);

        double running_loss = 0;
        std::size_t running_correct = 0, seen = 0;
        int batch_no = 0;
        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(config.batch_size)) {
            ++batch_no;
            std::size_t end = std::min(order.size(),
                                       start + static_cast<std::size_t>(config.batch_size));
            std::vector<const TokenSequence*> batch;
            std::vector<int> labels;
            for (std::size_t i = start; i < end; ++i) {
                batch.push_back(&dataset[order[i]].first);
                labels.push_back(dataset[order[i]].second);
            }
            BatchCache cache;
            Eigen::VectorXd y = forward_batch(model, batch, &cache);
            double loss = batch_mean_loss(y, labels);
            if (!std::isfinite(loss))
                throw TrainingError("train: non-finite loss at epoch " +
                                    std::to_string(epoch) + " batch " +
                                    std::to_string(batch_no));
            running_loss += loss * static_cast<double>(labels.size());
            for (Eigen::Index b = 0; b < y.size(); ++b)
                if ((y(b) >= 0.5 ? 1 : 0) == labels[static_cast<std::size_t>(b)])
                    ++running_correct;
            seen += labels.size();

            Tensors grad = Tensors::zeros_like(model);
            backward_batch(model, cache, labels, grad);
            adam_update(grad);
        }

        EpochMetrics em;
        em.epoch = epoch;
        em.train_loss = running_loss / static_cast<double>(seen);
        em.train_accuracy = static_cast<double>(running_correct) /
                            static_cast<double>(seen);
        if (!val_idx.empty())
            evaluate(val_idx, em.val_loss, em.val_accuracy);
        else {
            em.val_loss = 0;
            em.val_accuracy = 0;
        }
        metrics.push_back(em);
    }
    return metrics;
}

double gradient_check(const LstmModel& model,
                      const std::vector<std::pair<TokenSequence, int>>& batch) {
    std::vector<const TokenSequence*> seqs;
    std::vector<int> labels;
    for (const auto& [seq, y] : batch) {
        seqs.push_back(&seq);
        labels.push_back(y);
    }

    BatchCache cache;
    forward_batch(model, seqs, &cache);
    Tensors analytic = Tensors::zeros_like(model);
    backward_batch(model, cache, labels, analytic);

    LstmModel probe = model;
    auto loss_at = [&]() {
        Eigen::VectorXd y = forward_batch(probe, seqs, nullptr);
        return batch_mean_loss(y, labels);
    };

    const double h = 1e-4;
    double max_err = 0.0;
    auto check_scalar = [&](double& param, double analytic_g) {
        double saved = param;
        param = saved + h;
        double lp = loss_at();
        param = saved - h;
        double lm = loss_at();
        param = saved;
        double numeric = (lp - lm) / (2.0 * h);
        double denom = std::max(std::abs(analytic_g) + std::abs(numeric), 1e-8);
        max_err = std::max(max_err, std::abs(analytic_g - numeric) / denom);
    };

    auto check_matrix = [&](Eigen::MatrixXd& param, const Eigen::MatrixXd& g,
                            Eigen::Index first_row = 0) {
        for (Eigen::Index r = first_row; r < param.rows(); ++r)
            for (Eigen::Index c = 0; c < param.cols(); ++c)
                check_scalar(param(r, c), g(r, c));
    };
    auto check_vector = [&](Eigen::VectorXd& param, const Eigen::VectorXd& g) {
        for (Eigen::Index i = 0; i < param.size(); ++i)
            check_scalar(param(i), g(i));
    };

    check_matrix(probe.embedding, analytic.embedding, 1); // row 0 is frozen
    check_matrix(probe.Wi, analytic.Wi);
    check_matrix(probe.Wf, analytic.Wf);
    check_matrix(probe.Wg, analytic.Wg);
    check_matrix(probe.Wo, analytic.Wo);
    check_matrix(probe.Ui, analytic.Ui);
    check_matrix(probe.Uf, analytic.Uf);
    check_matrix(probe.Ug, analytic.Ug);
    check_matrix(probe.Uo, analytic.Uo);
    check_vector(probe.bi, analytic.bi);
    check_vector(probe.bf, analytic.bf);
    check_vector(probe.bg, analytic.bg);
    check_vector(probe.bo, analytic.bo);
    check_vector(probe.w_out, analytic.w_out);
    check_scalar(probe.b_out, analytic.b_out);
    return max_err;
}

std::string LstmModel::to_json() const {
    nlohmann::json j;
    j["dims"] = {{"vocab_size", dims.vocab_size},
                 {"d_embed", dims.d_embed},
                 {"d_hidden", dims.d_hidden},
                 {"sequence_length", dims.sequence_length}};
    j["vocabulary_file"] = vocabulary_file;
    j["embedding"] = matrix_to_json(embedding);
    j["Wi"] = matrix_to_json(Wi); j["Wf"] = matrix_to_json(Wf);
    j["Wg"] = matrix_to_json(Wg); j["Wo"] = matrix_to_json(Wo);
    j["Ui"] = matrix_to_json(Ui); j["Uf"] = matrix_to_json(Uf);
    j["Ug"] = matrix_to_json(Ug); j["Uo"] = matrix_to_json(Uo);
    j["bi"] = vector_to_json(bi); j["bf"] = vector_to_json(bf);
    j["bg"] = vector_to_json(bg); j["bo"] = vector_to_json(bo);
    j["w_out"] = vector_to_json(w_out);
    j["b_out"] = b_out;
    return j.dump();
}

LstmModel LstmModel::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    LstmModel m;
    const auto& d = j.at("dims");
    m.dims.vocab_size = d.at("vocab_size").get<int>();
    m.dims.d_embed = d.at("d_embed").get<int>();
    m.dims.d_hidden = d.at("d_hidden").get<int>();
    m.dims.sequence_length = d.at("sequence_length").get<int>();
    m.vocabulary_file = j.value("vocabulary_file", "");
    m.embedding = matrix_from_json(j.at("embedding"));
    m.Wi = matrix_from_json(j.at("Wi")); m.Wf = matrix_from_json(j.at("Wf"));
    m.Wg = matrix_from_json(j.at("Wg")); m.Wo = matrix_from_json(j.at("Wo"));
    m.Ui = matrix_from_json(j.at("Ui")); m.Uf = matrix_from_json(j.at("Uf"));
    m.Ug = matrix_from_json(j.at("Ug")); m.Uo = matrix_from_json(j.at("Uo"));
    m.bi = vector_from_json(j.at("bi")); m.bf = vector_from_json(j.at("bf"));
    m.bg = vector_from_json(j.at("bg")); m.bo = vector_from_json(j.at("bo"));
    m.w_out = vector_from_json(j.at("w_out"));
    m.b_out = j.at("b_out").get<double>();
    return m;
}

void LstmModel::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << to_json();
}

LstmModel LstmModel::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

} // namespace phishscan

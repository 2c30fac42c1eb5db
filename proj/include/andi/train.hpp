#ifndef ANDI_TRAIN_HPP
#define ANDI_TRAIN_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "andi/adam.hpp"
#include "andi/dataset.hpp"
#include "andi/losses.hpp"
#include "andi/network.hpp"
#include "andi/signal.hpp"

namespace andi::train {

enum class Task { regression, classification };

inline const char* task_name(Task t) {
    return t == Task::regression ? "regression" : "classification";
}

inline Task task_from_name(const std::string& s) {
    if (s == "regression") return Task::regression;
    if (s == "classification") return Task::classification;
    throw config_error("unknown task '" + s + "'");
}

struct TrainConfig {
    Task task = Task::regression;
    int max_epochs = 100;
    int patience = 10;  // stop after this many consecutive non-improving epochs
    int batch = 32;
    std::uint64_t seed = 0;
    nn::AdamConfig adam{};
    bool verbose = false;
};

// Per-epoch record; epochs are numbered from 1. best_epoch is the first
// epoch achieving the best validation metric.
struct History {
    std::vector<double> train_loss;
    std::vector<double> val_metric;
    int best_epoch = 0;
    double best_metric = 0.0;

    int epochs_run() const { return static_cast<int>(train_loss.size()); }
};

namespace detail {

// Normalize and lead-pad every trajectory once, up front.
inline std::vector<std::vector<float>> featurize_all(const data::Dataset& ds, int input_len) {
    std::vector<std::vector<float>> out;
    out.reserve(ds.items.size());
    for (const auto& item : ds.items) {
        auto padded = sig::lead_pad(sig::normalize(item.positions), input_len);
        out.emplace_back(padded.values.begin(), padded.values.end());
    }
    return out;
}

inline nn::Tensor<float> gather_batch(const std::vector<std::vector<float>>& features,
                                      const std::vector<std::int64_t>& idx, std::size_t begin,
                                      std::size_t end, int input_len) {
    const int b = static_cast<int>(end - begin);
    auto x = nn::Tensor<float>::zeros({b, input_len, 1});
    for (std::size_t i = begin; i < end; ++i) {
        const auto& f = features[static_cast<std::size_t>(idx[i])];
        std::copy(f.begin(), f.end(),
                  x.data.begin() + static_cast<std::int64_t>(i - begin) * input_len);
    }
    return x;
}

}  // namespace detail

// Minibatch Adam with a fresh 90/10 split each epoch and early stopping on
// the validation metric (MAE for regression, cross-entropy for
// classification). The best epoch's parameters are restored before return.
inline History train(nn::Network<float>& net, const data::Dataset& ds, const TrainConfig& cfg) {
    if (ds.items.empty()) throw size_error("train: empty dataset");
    if (cfg.patience < 1) throw config_error("train: patience must be >= 1");
    if (cfg.batch < 1) throw config_error("train: batch must be >= 1");
    const int input_len = net.spec().input_len;

    auto features = detail::featurize_all(ds, input_len);
    nn::Adam<float> opt(cfg.adam);
    History hist;
    std::vector<float> best_params = net.snapshot_params();
    int stall = 0;

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        auto split = data::split_epoch(ds, epoch, cfg.seed);

        double loss_sum = 0.0;
        std::int64_t loss_n = 0;
        for (std::size_t begin = 0; begin < split.train_idx.size(); begin += cfg.batch) {
            std::size_t end = std::min(begin + static_cast<std::size_t>(cfg.batch),
                                       split.train_idx.size());
            auto x = detail::gather_batch(features, split.train_idx, begin, end, input_len);
            auto out = net.forward(x, true);

            nn::LossResult<float> loss;
            if (cfg.task == Task::regression) {
                auto target = nn::Tensor<float>::zeros({x.dim(0), 1});
                for (std::size_t i = begin; i < end; ++i)
                    target.data[i - begin] = static_cast<float>(
                        ds.items[static_cast<std::size_t>(split.train_idx[i])].alpha);
                loss = nn::loss_mse(out, target);
            } else {
                std::vector<int> classes;
                for (std::size_t i = begin; i < end; ++i)
                    classes.push_back(static_cast<int>(
                        ds.items[static_cast<std::size_t>(split.train_idx[i])].model));
                loss = nn::loss_nll(out, classes);
            }
            if (!std::isfinite(loss.value))
                throw numeric_error("train: non-finite loss at epoch " + std::to_string(epoch) +
                                    ", batch " + std::to_string(begin / cfg.batch));
            loss_sum += loss.value * static_cast<double>(end - begin);
            loss_n += static_cast<std::int64_t>(end - begin);

            net.zero_grad();
            net.backward(loss.grad);
            opt.step(net.params());
        }
        hist.train_loss.push_back(loss_sum / static_cast<double>(loss_n));

        // validation metric on this epoch's held-out 10%
        double val_sum = 0.0;
        std::int64_t val_n = 0;
        for (std::size_t begin = 0; begin < split.val_idx.size(); begin += cfg.batch) {
            std::size_t end =
                std::min(begin + static_cast<std::size_t>(cfg.batch), split.val_idx.size());
            auto x = detail::gather_batch(features, split.val_idx, begin, end, input_len);
            auto out = net.forward(x, false);
            if (cfg.task == Task::regression) {
                for (std::size_t i = begin; i < end; ++i)
                    val_sum += std::fabs(
                        static_cast<double>(out.data[i - begin]) -
                        ds.items[static_cast<std::size_t>(split.val_idx[i])].alpha);
            } else {
                std::vector<int> classes;
                for (std::size_t i = begin; i < end; ++i)
                    classes.push_back(static_cast<int>(
                        ds.items[static_cast<std::size_t>(split.val_idx[i])].model));
                val_sum += nn::loss_nll(out, classes).value * static_cast<double>(end - begin);
            }
            val_n += static_cast<std::int64_t>(end - begin);
        }
        double val = val_n > 0 ? val_sum / static_cast<double>(val_n) : hist.train_loss.back();
        hist.val_metric.push_back(val);

        if (hist.best_epoch == 0 || val < hist.best_metric) {
            hist.best_epoch = epoch;
            hist.best_metric = val;
            best_params = net.snapshot_params();
            stall = 0;
        } else if (++stall >= cfg.patience) {
            break;
        }

        if (cfg.verbose)
            std::fprintf(stderr, "epoch %d  train_loss %.6f  val %.6f%s\n", epoch,
                         hist.train_loss.back(), val, hist.best_epoch == epoch ? "  *" : "");
    }

    net.restore_params(best_params);
    return hist;
}

}  // namespace andi::train

#endif

#ifndef ANDI_LOSSES_HPP
#define ANDI_LOSSES_HPP

#include <cmath>
#include <vector>

#include "andi/errors.hpp"
#include "andi/tensor.hpp"

namespace andi::nn {

template <typename T>
struct LossResult {
    double value = 0.0;
    Tensor<T> grad;  // d loss / d pred
};

// Mean squared error over all elements.
template <typename T>
LossResult<T> loss_mse(const Tensor<T>& pred, const Tensor<T>& target) {
    if (pred.shape != target.shape)
        throw shape_error("loss_mse: shape mismatch " + pred.shape_str() + " vs " +
                          target.shape_str());
    LossResult<T> out;
    out.grad = Tensor<T>::zeros(pred.shape);
    const double n = static_cast<double>(pred.data.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        double d = static_cast<double>(pred.data[i]) - static_cast<double>(target.data[i]);
        acc += d * d;
        out.grad.data[i] = static_cast<T>(2.0 * d / n);
    }
    out.value = acc / n;
    return out;
}

// Softmax cross-entropy on raw logits [batch, classes], log-sum-exp
// stabilized; mean over the batch.
template <typename T>
LossResult<T> loss_softmax_xent(const Tensor<T>& logits, const std::vector<int>& classes) {
    if (logits.rank() != 2) throw shape_error("loss_softmax_xent: expected [batch, classes]");
    const int batch = logits.dim(0), k = logits.dim(1);
    if (static_cast<int>(classes.size()) != batch)
        throw shape_error("loss_softmax_xent: batch size mismatch");

    LossResult<T> out;
    out.grad = Tensor<T>::zeros(logits.shape);
    double acc = 0.0;
    for (int b = 0; b < batch; ++b) {
        const T* row = logits.data.data() + static_cast<std::size_t>(b) * k;
        int cls = classes[static_cast<std::size_t>(b)];
        if (cls < 0 || cls >= k)
            throw domain_error("loss_softmax_xent: class " + std::to_string(cls) +
                               " outside [0," + std::to_string(k) + ")");
        double mx = row[0];
        for (int j = 1; j < k; ++j) mx = std::max(mx, static_cast<double>(row[j]));
        double lse = 0.0;
        for (int j = 0; j < k; ++j) lse += std::exp(static_cast<double>(row[j]) - mx);
        lse = mx + std::log(lse);
        acc += lse - static_cast<double>(row[cls]);
        for (int j = 0; j < k; ++j) {
            double p = std::exp(static_cast<double>(row[j]) - lse);
            double g = (p - (j == cls ? 1.0 : 0.0)) / batch;
            out.grad.data[static_cast<std::size_t>(b) * k + static_cast<std::size_t>(j)] =
                static_cast<T>(g);
        }
    }
    out.value = acc / batch;
    return out;
}

// Negative log likelihood on probabilities (a softmax output layer); mean
// over the batch. Composing its gradient with the softmax backward pass
// reproduces the usual (p - onehot) logit gradient.
template <typename T>
LossResult<T> loss_nll(const Tensor<T>& probs, const std::vector<int>& classes) {
    if (probs.rank() != 2) throw shape_error("loss_nll: expected [batch, classes]");
    const int batch = probs.dim(0), k = probs.dim(1);
    if (static_cast<int>(classes.size()) != batch) throw shape_error("loss_nll: batch mismatch");

    const double floor = 1e-30;
    LossResult<T> out;
    out.grad = Tensor<T>::zeros(probs.shape);
    double acc = 0.0;
    for (int b = 0; b < batch; ++b) {
        int cls = classes[static_cast<std::size_t>(b)];
        if (cls < 0 || cls >= k)
            throw domain_error("loss_nll: class " + std::to_string(cls) + " outside range");
        std::size_t i = static_cast<std::size_t>(b) * k + static_cast<std::size_t>(cls);
        double p = std::max(static_cast<double>(probs.data[i]), floor);
        acc += -std::log(p);
        out.grad.data[i] = static_cast<T>(-1.0 / (p * batch));
    }
    out.value = acc / batch;
    return out;
}

}  // namespace andi::nn

#endif

#ifndef ANDI_GRADCHECK_HPP
#define ANDI_GRADCHECK_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "andi/losses.hpp"
#include "andi/network.hpp"

namespace andi::nn {

// Scalar loss of a network output; must be reusable across repeated forward
// passes with identical results.
template <typename T>
using LossFn = std::function<LossResult<T>(const Tensor<T>&)>;

// Compare analytic parameter gradients against central finite differences.
// Dropout masks are frozen for the duration of the check. Returns the
// maximum relative error across all parameters.
template <typename T>
double grad_check(Network<T>& net, const Tensor<T>& input, const LossFn<T>& loss_fn,
                  double fd_step = 1e-5) {
    net.forward(input, true);  // materialize dropout masks
    net.freeze_dropout(true);

    net.zero_grad();
    auto out = net.forward(input, true);
    auto loss = loss_fn(out);
    net.backward(loss.grad);

    std::vector<std::vector<T>> analytic;
    for (auto* p : net.params()) analytic.push_back(p->value.grad);

    double max_rel = 0.0;
    auto params = net.params();
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        auto& value = params[pi]->value;
        for (std::size_t j = 0; j < value.data.size(); ++j) {
            T orig = value.data[j];
            value.data[j] = orig + static_cast<T>(fd_step);
            double up = loss_fn(net.forward(input, true)).value;
            value.data[j] = orig - static_cast<T>(fd_step);
            double down = loss_fn(net.forward(input, true)).value;
            value.data[j] = orig;
            double numeric = (up - down) / (2.0 * fd_step);
            double a = static_cast<double>(analytic[pi][j]);
            double denom = std::max(std::fabs(a) + std::fabs(numeric), 1e-6);
            max_rel = std::max(max_rel, std::fabs(a - numeric) / denom);
        }
    }
    net.freeze_dropout(false);
    return max_rel;
}

}  // namespace andi::nn

#endif

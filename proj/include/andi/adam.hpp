#ifndef ANDI_ADAM_HPP
#define ANDI_ADAM_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "andi/errors.hpp"
#include "andi/tensor.hpp"

namespace andi::nn {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Adaptive-moment optimizer with bias correction. Moment buffers are sized
// lazily on the first step and mirror the parameter list order.
template <typename T>
class Adam {
  public:
    explicit Adam(AdamConfig cfg = {}) : cfg_(cfg) {}

    std::int64_t step_count() const { return step_; }

    void step(const std::vector<Param<T>*>& params) {
        if (m_.empty()) {
            m_.resize(params.size());
            v_.resize(params.size());
            for (std::size_t i = 0; i < params.size(); ++i) {
                m_[i].assign(params[i]->value.data.size(), 0.0);
                v_[i].assign(params[i]->value.data.size(), 0.0);
            }
        }
        if (m_.size() != params.size()) throw shape_error("adam: parameter list changed size");

        ++step_;
        const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_));
        const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_));
        for (std::size_t i = 0; i < params.size(); ++i) {
            auto& p = params[i]->value;
            if (p.grad.size() != p.data.size())
                throw shape_error("adam: missing gradient for " + params[i]->name);
            for (std::size_t j = 0; j < p.data.size(); ++j) {
                double g = static_cast<double>(p.grad[j]);
                if (!std::isfinite(g))
                    throw numeric_error("adam: non-finite gradient in " + params[i]->name);
                m_[i][j] = cfg_.beta1 * m_[i][j] + (1.0 - cfg_.beta1) * g;
                v_[i][j] = cfg_.beta2 * v_[i][j] + (1.0 - cfg_.beta2) * g * g;
                double mhat = m_[i][j] / bc1;
                double vhat = v_[i][j] / bc2;
                p.data[j] = static_cast<T>(static_cast<double>(p.data[j]) -
                                           cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps));
            }
        }
    }

  private:
    AdamConfig cfg_;
    std::int64_t step_ = 0;
    std::vector<std::vector<double>> m_, v_;
};

}  // namespace andi::nn

#endif

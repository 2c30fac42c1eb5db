#ifndef ANDI_LAYERS_HPP
#define ANDI_LAYERS_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "andi/errors.hpp"
#include "andi/rng.hpp"
#include "andi/tensor.hpp"

namespace andi::nn {

enum class Activation { linear, relu, tanh, sigmoid, softmax };
enum class LayerKind { conv1d, maxpool1d, bilstm, dropout, dense };

inline const char* activation_name(Activation a) {
    switch (a) {
        case Activation::linear: return "linear";
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
        case Activation::sigmoid: return "sigmoid";
        case Activation::softmax: return "softmax";
    }
    throw domain_error("unknown activation");
}

inline Activation activation_from_name(const std::string& s) {
    for (Activation a : {Activation::linear, Activation::relu, Activation::tanh,
                         Activation::sigmoid, Activation::softmax})
        if (s == activation_name(a)) return a;
    throw domain_error("unknown activation: " + s);
}

inline const char* layer_kind_name(LayerKind k) {
    switch (k) {
        case LayerKind::conv1d: return "conv1d";
        case LayerKind::maxpool1d: return "maxpool1d";
        case LayerKind::bilstm: return "bilstm";
        case LayerKind::dropout: return "dropout";
        case LayerKind::dense: return "dense";
    }
    throw domain_error("unknown layer kind");
}

inline LayerKind layer_kind_from_name(const std::string& s) {
    for (LayerKind k : {LayerKind::conv1d, LayerKind::maxpool1d, LayerKind::bilstm,
                        LayerKind::dropout, LayerKind::dense})
        if (s == layer_kind_name(k)) return k;
    throw domain_error("unknown layer kind: " + s);
}

struct LayerSpec {
    LayerKind kind = LayerKind::dense;
    int filters = 0, kernel = 0;  // conv1d
    int pool = 0;                 // maxpool1d
    int hidden = 0;               // bilstm (per direction)
    double rate = 0.0;            // dropout
    int units = 0;                // dense
    Activation activation = Activation::linear;

    static LayerSpec conv(int filters, int kernel) {
        if (filters <= 0 || kernel <= 0) throw config_error("conv1d: filters/kernel must be > 0");
        LayerSpec s;
        s.kind = LayerKind::conv1d;
        s.filters = filters;
        s.kernel = kernel;
        return s;
    }
    static LayerSpec maxpool(int pool = 2) {
        if (pool <= 0) throw config_error("maxpool1d: pool must be > 0");
        LayerSpec s;
        s.kind = LayerKind::maxpool1d;
        s.pool = pool;
        return s;
    }
    static LayerSpec lstm(int hidden) {
        if (hidden <= 0) throw config_error("bilstm: hidden must be > 0");
        LayerSpec s;
        s.kind = LayerKind::bilstm;
        s.hidden = hidden;
        return s;
    }
    static LayerSpec drop(double rate) {
        if (!(rate >= 0.0 && rate < 1.0)) throw config_error("dropout: rate must be in [0,1)");
        LayerSpec s;
        s.kind = LayerKind::dropout;
        s.rate = rate;
        return s;
    }
    static LayerSpec dense(int units, Activation act = Activation::linear) {
        if (units <= 0) throw config_error("dense: units must be > 0");
        LayerSpec s;
        s.kind = LayerKind::dense;
        s.units = units;
        s.activation = act;
        return s;
    }

    bool operator==(const LayerSpec&) const = default;
};

template <typename T>
class Layer {
  public:
    virtual ~Layer() = default;
    virtual LayerSpec spec() const = 0;
    virtual Tensor<T> forward(const Tensor<T>& x, bool training) = 0;
    virtual Tensor<T> backward(const Tensor<T>& dy) = 0;
    virtual std::vector<Param<T>*> params() { return {}; }
};

namespace detail {

template <typename T>
void glorot_uniform(Tensor<T>& w, int fan_in, int fan_out, Rng& rng) {
    double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (auto& v : w.data) v = static_cast<T>(rng.uniform(-limit, limit));
}

template <typename T>
void check_rank3(const Tensor<T>& x, const char* who) {
    if (x.rank() != 3)
        throw shape_error(std::string(who) + ": expected rank-3 [batch,length,channels], got " +
                          x.shape_str());
}

}  // namespace detail

// 1-d convolution over the time axis, 'same' zero padding, stride 1.
template <typename T>
class Conv1D : public Layer<T> {
  public:
    Conv1D(int in_channels, int filters, int kernel, Rng rng)
        : in_ch_(in_channels), filters_(filters), kernel_(kernel),
          weight_("weight", {kernel, in_channels, filters}), bias_("bias", {filters}) {
        detail::glorot_uniform(weight_.value, kernel * in_channels, kernel * filters, rng);
    }

    LayerSpec spec() const override { return LayerSpec::conv(filters_, kernel_); }

    Tensor<T> forward(const Tensor<T>& x, bool) override {
        detail::check_rank3(x, "conv1d");
        if (x.dim(2) != in_ch_)
            throw shape_error("conv1d: expected " + std::to_string(in_ch_) + " channels, got " +
                              std::to_string(x.dim(2)));
        const int batch = x.dim(0), len = x.dim(1);
        if (kernel_ > len)
            throw shape_error("conv1d: kernel " + std::to_string(kernel_) +
                              " exceeds sequence length " + std::to_string(len));
        input_ = x;
        Tensor<T> y = Tensor<T>::zeros({batch, len, filters_});
        const int pad_left = (kernel_ - 1) / 2;
        CMapMat<T> bias(bias_.value.data.data(), 1, filters_);
        for (int b = 0; b < batch; ++b) {
            CMapMat<T> xb(x.data.data() + static_cast<std::size_t>(b) * len * in_ch_, len, in_ch_);
            MapMat<T> yb(y.data.data() + static_cast<std::size_t>(b) * len * filters_, len,
                         filters_);
            yb.rowwise() = bias.row(0);
            for (int k = 0; k < kernel_; ++k) {
                int s = k - pad_left;
                int t0 = std::max(0, -s);
                int n = len - std::abs(s);
                CMapMat<T> wk(weight_.value.data.data() +
                                  static_cast<std::size_t>(k) * in_ch_ * filters_,
                              in_ch_, filters_);
                yb.middleRows(t0, n).noalias() += xb.middleRows(t0 + s, n) * wk;
            }
        }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        const int batch = input_.dim(0), len = input_.dim(1);
        Tensor<T> dx = Tensor<T>::zeros(input_.shape);
        const int pad_left = (kernel_ - 1) / 2;
        MapMat<T> db(bias_.value.grad.data(), 1, filters_);
        for (int b = 0; b < batch; ++b) {
            CMapMat<T> xb(input_.data.data() + static_cast<std::size_t>(b) * len * in_ch_, len,
                          in_ch_);
            CMapMat<T> dyb(dy.data.data() + static_cast<std::size_t>(b) * len * filters_, len,
                           filters_);
            MapMat<T> dxb(dx.data.data() + static_cast<std::size_t>(b) * len * in_ch_, len,
                          in_ch_);
            db.row(0) += dyb.colwise().sum();
            for (int k = 0; k < kernel_; ++k) {
                int s = k - pad_left;
                int t0 = std::max(0, -s);
                int n = len - std::abs(s);
                CMapMat<T> wk(weight_.value.data.data() +
                                  static_cast<std::size_t>(k) * in_ch_ * filters_,
                              in_ch_, filters_);
                MapMat<T> dwk(weight_.value.grad.data() +
                                  static_cast<std::size_t>(k) * in_ch_ * filters_,
                              in_ch_, filters_);
                dxb.middleRows(t0 + s, n).noalias() += dyb.middleRows(t0, n) * wk.transpose();
                dwk.noalias() += xb.middleRows(t0 + s, n).transpose() * dyb.middleRows(t0, n);
            }
        }
        return dx;
    }

    std::vector<Param<T>*> params() override { return {&weight_, &bias_}; }

  private:
    int in_ch_, filters_, kernel_;
    Param<T> weight_, bias_;
    Tensor<T> input_;
};

// Window-wise maximum over time, stride = pool; gradient goes to the argmax
// (first index on ties).
template <typename T>
class MaxPool1D : public Layer<T> {
  public:
    explicit MaxPool1D(int pool) : pool_(pool) {}

    LayerSpec spec() const override { return LayerSpec::maxpool(pool_); }

    Tensor<T> forward(const Tensor<T>& x, bool) override {
        detail::check_rank3(x, "maxpool1d");
        const int batch = x.dim(0), len = x.dim(1), ch = x.dim(2);
        if (len < pool_)
            throw shape_error("maxpool1d: length " + std::to_string(len) + " below pool " +
                              std::to_string(pool_));
        const int out_len = len / pool_;
        in_shape_ = x.shape;
        Tensor<T> y = Tensor<T>::zeros({batch, out_len, ch});
        argmax_.assign(y.data.size(), 0);
        for (int b = 0; b < batch; ++b)
            for (int t = 0; t < out_len; ++t)
                for (int c = 0; c < ch; ++c) {
                    int best = t * pool_;
                    T best_v = x.data[idx(b, best, c, len, ch)];
                    for (int k = 1; k < pool_; ++k) {
                        T v = x.data[idx(b, t * pool_ + k, c, len, ch)];
                        if (v > best_v) {
                            best_v = v;
                            best = t * pool_ + k;
                        }
                    }
                    std::size_t o = idx(b, t, c, out_len, ch);
                    y.data[o] = best_v;
                    argmax_[o] = best;
                }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        const int batch = in_shape_[0], len = in_shape_[1], ch = in_shape_[2];
        const int out_len = len / pool_;
        Tensor<T> dx = Tensor<T>::zeros(in_shape_);
        for (int b = 0; b < batch; ++b)
            for (int t = 0; t < out_len; ++t)
                for (int c = 0; c < ch; ++c) {
                    std::size_t o = idx(b, t, c, out_len, ch);
                    dx.data[idx(b, argmax_[o], c, len, ch)] += dy.data[o];
                }
        return dx;
    }

  private:
    static std::size_t idx(int b, int t, int c, int len, int ch) {
        return (static_cast<std::size_t>(b) * len + static_cast<std::size_t>(t)) * ch +
               static_cast<std::size_t>(c);
    }
    int pool_;
    std::vector<int> in_shape_;
    std::vector<int> argmax_;
};

// Bidirectional LSTM; per-step outputs are [forward ; backward] concatenated.
// Full backpropagation through time.
template <typename T>
class BiLSTM : public Layer<T> {
  public:
    BiLSTM(int in_channels, int hidden, Rng rng)
        : in_ch_(in_channels), hidden_(hidden) {
        const char* names[2][3] = {{"fw.W", "fw.U", "fw.b"}, {"bw.W", "bw.U", "bw.b"}};
        for (int d = 0; d < 2; ++d) {
            dir_[d].W = Param<T>(names[d][0], {in_ch_, 4 * hidden_});
            dir_[d].U = Param<T>(names[d][1], {hidden_, 4 * hidden_});
            dir_[d].b = Param<T>(names[d][2], {4 * hidden_});
            detail::glorot_uniform(dir_[d].W.value, in_ch_, 4 * hidden_, rng);
            detail::glorot_uniform(dir_[d].U.value, hidden_, 4 * hidden_, rng);
            // forget-gate bias starts at 1
            for (int j = hidden_; j < 2 * hidden_; ++j)
                dir_[d].b.value.data[static_cast<std::size_t>(j)] = T(1);
        }
    }

    LayerSpec spec() const override { return LayerSpec::lstm(hidden_); }

    Tensor<T> forward(const Tensor<T>& x, bool) override {
        detail::check_rank3(x, "bilstm");
        if (x.dim(2) != in_ch_)
            throw shape_error("bilstm: expected " + std::to_string(in_ch_) + " channels, got " +
                              std::to_string(x.dim(2)));
        input_ = x;
        const int batch = x.dim(0), len = x.dim(1);
        Tensor<T> y = Tensor<T>::zeros({batch, len, 2 * hidden_});
        for (int d = 0; d < 2; ++d) run_direction(d, x, y);
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        Tensor<T> dx = Tensor<T>::zeros(input_.shape);
        for (int d = 0; d < 2; ++d) backprop_direction(d, dy, dx);
        return dx;
    }

    std::vector<Param<T>*> params() override {
        return {&dir_[0].W, &dir_[0].U, &dir_[0].b, &dir_[1].W, &dir_[1].U, &dir_[1].b};
    }

    // Exposed so tests can tie the two directions' weights together.
    Param<T>& direction_param(int dir, int which) {
        Param<T>* p[2][3] = {{&dir_[0].W, &dir_[0].U, &dir_[0].b},
                             {&dir_[1].W, &dir_[1].U, &dir_[1].b}};
        return *p[dir][which];
    }

  private:
    struct Direction {
        Param<T> W, U, b;
        // caches indexed by processing step s (time order for fw, reversed for bw)
        Mat<T> gates;   // [len, batch*4H] post-activation i|f|g|o
        Mat<T> cells;   // [len, batch*H]
        Mat<T> tanh_c;  // [len, batch*H]
        Mat<T> hidden;  // [len, batch*H]
    };

    void run_direction(int d, const Tensor<T>& x, Tensor<T>& y) {
        const int batch = x.dim(0), len = x.dim(1);
        const int H = hidden_;
        Direction& dir = dir_[d];
        dir.gates.resize(len, batch * 4 * H);
        dir.cells.resize(len, batch * H);
        dir.tanh_c.resize(len, batch * H);
        dir.hidden.resize(len, batch * H);

        CMapMat<T> W(dir.W.value.data.data(), in_ch_, 4 * H);
        CMapMat<T> U(dir.U.value.data.data(), H, 4 * H);
        CMapMat<T> b(dir.b.value.data.data(), 1, 4 * H);

        Mat<T> h_prev = Mat<T>::Zero(batch, H);
        Mat<T> c_prev = Mat<T>::Zero(batch, H);
        for (int s = 0; s < len; ++s) {
            int t = d == 0 ? s : len - 1 - s;
            CStrideMapMat<T> xt(x.data.data() + static_cast<std::size_t>(t) * in_ch_, batch,
                                in_ch_, Eigen::OuterStride<>(len * in_ch_));
            MapMat<T> A(dir.gates.row(s).data(), batch, 4 * H);
            A.noalias() = xt * W;
            A.noalias() += h_prev * U;
            A.rowwise() += b.row(0);

            auto gi = A.middleCols(0, H);
            auto gf = A.middleCols(H, H);
            auto gg = A.middleCols(2 * H, H);
            auto go = A.middleCols(3 * H, H);
            gi = gi.unaryExpr([](T v) { return sigmoid(v); });
            gf = gf.unaryExpr([](T v) { return sigmoid(v); });
            gg = gg.array().tanh();
            go = go.unaryExpr([](T v) { return sigmoid(v); });

            MapMat<T> c(dir.cells.row(s).data(), batch, H);
            MapMat<T> tc(dir.tanh_c.row(s).data(), batch, H);
            MapMat<T> h(dir.hidden.row(s).data(), batch, H);
            c.array() = gf.array() * c_prev.array() + gi.array() * gg.array();
            tc.array() = c.array().tanh();
            h.array() = go.array() * tc.array();

            StrideMapMat<T> yt(y.data.data() + static_cast<std::size_t>(t) * 2 * H + d * H, batch,
                               H, Eigen::OuterStride<>(len * 2 * H));
            yt = h;
            h_prev = h;
            c_prev = c;
        }
    }

    void backprop_direction(int d, const Tensor<T>& dy, Tensor<T>& dx) {
        const int batch = input_.dim(0), len = input_.dim(1);
        const int H = hidden_;
        Direction& dir = dir_[d];

        CMapMat<T> W(dir.W.value.data.data(), in_ch_, 4 * H);
        CMapMat<T> U(dir.U.value.data.data(), H, 4 * H);
        MapMat<T> dW(dir.W.value.grad.data(), in_ch_, 4 * H);
        MapMat<T> dU(dir.U.value.grad.data(), H, 4 * H);
        MapMat<T> db(dir.b.value.grad.data(), 1, 4 * H);

        Mat<T> dh_next = Mat<T>::Zero(batch, H);
        Mat<T> dc_next = Mat<T>::Zero(batch, H);
        Mat<T> dA(batch, 4 * H);
        for (int s = len - 1; s >= 0; --s) {
            int t = d == 0 ? s : len - 1 - s;
            CMapMat<T> A(dir.gates.row(s).data(), batch, 4 * H);
            auto gi = A.middleCols(0, H);
            auto gf = A.middleCols(H, H);
            auto gg = A.middleCols(2 * H, H);
            auto go = A.middleCols(3 * H, H);
            CMapMat<T> tc(dir.tanh_c.row(s).data(), batch, H);

            CStrideMapMat<T> dyt(dy.data.data() + static_cast<std::size_t>(t) * 2 * H + d * H,
                                 batch, H, Eigen::OuterStride<>(len * 2 * H));
            Mat<T> dh = dyt + dh_next;
            Mat<T> dc = (dc_next.array() +
                         dh.array() * go.array() * (T(1) - tc.array() * tc.array()))
                            .matrix();

            // previous cell state (zero at the first processing step)
            Mat<T> c_prev = s > 0 ? Mat<T>(CMapMat<T>(dir.cells.row(s - 1).data(), batch, H))
                                  : Mat<T>::Zero(batch, H);

            dA.middleCols(0, H).array() =
                dc.array() * gg.array() * gi.array() * (T(1) - gi.array());
            dA.middleCols(H, H).array() =
                dc.array() * c_prev.array() * gf.array() * (T(1) - gf.array());
            dA.middleCols(2 * H, H).array() =
                dc.array() * gi.array() * (T(1) - gg.array() * gg.array());
            dA.middleCols(3 * H, H).array() =
                dh.array() * tc.array() * go.array() * (T(1) - go.array());

            CStrideMapMat<T> xt(input_.data.data() + static_cast<std::size_t>(t) * in_ch_, batch,
                                in_ch_, Eigen::OuterStride<>(len * in_ch_));
            dW.noalias() += xt.transpose() * dA;
            if (s > 0) {
                CMapMat<T> h_prev(dir.hidden.row(s - 1).data(), batch, H);
                dU.noalias() += h_prev.transpose() * dA;
            }
            db.row(0) += dA.colwise().sum();

            StrideMapMat<T> dxt(dx.data.data() + static_cast<std::size_t>(t) * in_ch_, batch,
                                in_ch_, Eigen::OuterStride<>(len * in_ch_));
            dxt.noalias() += dA * W.transpose();
            dh_next.noalias() = dA * U.transpose();
            dc_next.array() = dc.array() * gf.array();
        }
    }

    static T sigmoid(T v) { return T(1) / (T(1) + std::exp(-v)); }

    int in_ch_, hidden_;
    Direction dir_[2];
    Tensor<T> input_;
};

// Inverted dropout: zero with probability rate, scale survivors by 1/(1-rate).
// Identity in inference mode. freeze() pins the current mask (gradient checks).
template <typename T>
class Dropout : public Layer<T> {
  public:
    Dropout(double rate, Rng rng) : rate_(rate), rng_(rng) {}

    LayerSpec spec() const override { return LayerSpec::drop(rate_); }

    Tensor<T> forward(const Tensor<T>& x, bool training) override {
        active_ = training && rate_ > 0.0;
        if (!active_) return x;
        if (!(frozen_ && mask_.size() == x.data.size())) {
            mask_.resize(x.data.size());
            const T keep_scale = static_cast<T>(1.0 / (1.0 - rate_));
            for (auto& m : mask_) m = rng_.uniform() < rate_ ? T(0) : keep_scale;
        }
        Tensor<T> y = x;
        for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] *= mask_[i];
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        if (!active_) return dy;
        Tensor<T> dx = dy;
        for (std::size_t i = 0; i < dx.data.size(); ++i) dx.data[i] *= mask_[i];
        return dx;
    }

    void freeze(bool on) { frozen_ = on; }

  private:
    double rate_;
    Rng rng_;
    std::vector<T> mask_;
    bool active_ = false, frozen_ = false;
};

// Affine map plus activation. A rank-3 input [batch,length,channels] is
// reduced to its final time step first (the sequence-to-scalar head).
template <typename T>
class Dense : public Layer<T> {
  public:
    Dense(int in_features, int units, Activation act, Rng rng)
        : in_(in_features), units_(units), act_(act),
          weight_("weight", {in_features, units}), bias_("bias", {units}) {
        detail::glorot_uniform(weight_.value, in_features, units, rng);
    }

    LayerSpec spec() const override { return LayerSpec::dense(units_, act_); }

    Tensor<T> forward(const Tensor<T>& x, bool) override {
        if (x.rank() != 2 && x.rank() != 3)
            throw shape_error("dense: expected rank 2 or 3 input, got " + x.shape_str());
        const int batch = x.dim(0);
        const int feat = x.dim(x.rank() - 1);
        if (feat != in_)
            throw shape_error("dense: expected " + std::to_string(in_) + " features, got " +
                              std::to_string(feat));
        in_shape_ = x.shape;

        // last time step only for sequence input
        last_step_.resize(batch, in_);
        if (x.rank() == 3) {
            const int len = x.dim(1);
            CStrideMapMat<T> xt(x.data.data() + static_cast<std::size_t>(len - 1) * in_, batch,
                                in_, Eigen::OuterStride<>(len * in_));
            last_step_ = xt;
        } else {
            last_step_ = CMapMat<T>(x.data.data(), batch, in_);
        }

        Tensor<T> y = Tensor<T>::zeros({batch, units_});
        MapMat<T> ym(y.data.data(), batch, units_);
        CMapMat<T> W(weight_.value.data.data(), in_, units_);
        CMapMat<T> b(bias_.value.data.data(), 1, units_);
        ym.noalias() = last_step_ * W;
        ym.rowwise() += b.row(0);
        apply_activation(ym);
        output_ = ym;
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) override {
        const int batch = in_shape_[0];
        CMapMat<T> dym(dy.data.data(), batch, units_);
        Mat<T> dz = activation_backward(dym);

        MapMat<T> dW(weight_.value.grad.data(), in_, units_);
        MapMat<T> db(bias_.value.grad.data(), 1, units_);
        CMapMat<T> W(weight_.value.data.data(), in_, units_);
        dW.noalias() += last_step_.transpose() * dz;
        db.row(0) += dz.colwise().sum();

        Tensor<T> dx = Tensor<T>::zeros(in_shape_);
        if (static_cast<int>(in_shape_.size()) == 3) {
            const int len = in_shape_[1];
            StrideMapMat<T> dxt(dx.data.data() + static_cast<std::size_t>(len - 1) * in_, batch,
                                in_, Eigen::OuterStride<>(len * in_));
            dxt.noalias() = dz * W.transpose();
        } else {
            MapMat<T> dxm(dx.data.data(), batch, in_);
            dxm.noalias() = dz * W.transpose();
        }
        return dx;
    }

    std::vector<Param<T>*> params() override { return {&weight_, &bias_}; }

  private:
    void apply_activation(MapMat<T>& y) {
        switch (act_) {
            case Activation::linear: return;
            case Activation::relu:
                y = y.unaryExpr([](T v) { return v > T(0) ? v : T(0); });
                return;
            case Activation::tanh: y = y.array().tanh(); return;
            case Activation::sigmoid:
                y = y.unaryExpr([](T v) { return T(1) / (T(1) + std::exp(-v)); });
                return;
            case Activation::softmax:
                for (int r = 0; r < y.rows(); ++r) {
                    auto row = y.row(r);
                    T mx = row.maxCoeff();
                    row = (row.array() - mx).exp();
                    row /= row.sum();
                }
                return;
        }
    }

    Mat<T> activation_backward(const CMapMat<T>& dy) {
        switch (act_) {
            case Activation::linear: return dy;
            case Activation::relu:
                return ((output_.array() > T(0)).template cast<T>() * dy.array()).matrix();
            case Activation::tanh:
                return (dy.array() * (T(1) - output_.array() * output_.array())).matrix();
            case Activation::sigmoid:
                return (dy.array() * output_.array() * (T(1) - output_.array())).matrix();
            case Activation::softmax: {
                Mat<T> dz(dy.rows(), dy.cols());
                for (int r = 0; r < dy.rows(); ++r) {
                    T dot = dy.row(r).dot(output_.row(r));
                    dz.row(r) =
                        output_.row(r).array() * (dy.row(r).array() - dot);
                }
                return dz;
            }
        }
        throw domain_error("unknown activation");
    }

    int in_, units_;
    Activation act_;
    Param<T> weight_, bias_;
    std::vector<int> in_shape_;
    Mat<T> last_step_;
    Mat<T> output_;
};

}  // namespace andi::nn

#endif

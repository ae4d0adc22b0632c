#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dgakit/nn/init.hpp"
#include "dgakit/nn/tensor.hpp"
#include "dgakit/rng.hpp"

namespace dgakit::nn {

// One learnable tensor with its gradient accumulator (always same shape).
template <typename T>
struct Param {
    std::string name;
    Tensor<T> value;
    Tensor<T> grad;
    bool grad_ready = false;

    Param() = default;
    Param(std::string n, std::vector<std::size_t> shape)
        : name(std::move(n)), value(shape), grad(std::move(shape)) {}

    void accumulate_done() { grad_ready = true; }
    void clear_grad() {
        grad.zero();
        grad_ready = false;
    }
};

inline void set_threads(int n) {
    Eigen::setNbThreads(n > 0 ? n : 0);
}

enum class Activation { none, relu, sigmoid };

namespace detail {

template <typename T>
void apply_activation(MatMap<T> m, Activation act) {
    switch (act) {
        case Activation::none:
            break;
        case Activation::relu:
            m = m.array().max(T(0)).matrix();
            break;
        case Activation::sigmoid:
            m = (T(1) / (T(1) + (-m.array()).exp())).matrix();
            break;
    }
}

// Gradient through the activation, expressed in terms of the post-activation
// output y: relu' = [y > 0], sigmoid' = y(1-y).
template <typename T>
void activation_backward(MatMap<T> da, ConstMatMap<T> y, Activation act) {
    switch (act) {
        case Activation::none:
            break;
        case Activation::relu:
            da = (da.array() * (y.array() > T(0)).template cast<T>()).matrix();
            break;
        case Activation::sigmoid:
            da = (da.array() * y.array() * (T(1) - y.array())).matrix();
            break;
    }
}

}  // namespace detail

// Learned character embedding. Table row 0 is the padding row, zero at
// initialization; valid character indices are 1..vocab.
template <typename T>
class Embedding {
public:
    Embedding(std::string name, std::size_t table_rows, std::size_t dim, Rng& rng)
        : table_(std::move(name), {table_rows, dim}), dim_(dim) {
        glorot_uniform(table_.value, table_rows, dim, rng);
        for (std::size_t j = 0; j < dim_; ++j) table_.value[j] = T(0);
    }

    // indices: flat [batch * seq_len], values < table rows.
    Tensor<T> forward(const std::uint8_t* indices, std::size_t batch, std::size_t seq_len) {
        last_indices_.assign(indices, indices + batch * seq_len);
        batch_ = batch;
        seq_len_ = seq_len;
        Tensor<T> y({batch, seq_len, dim_});
        const T* tab = table_.value.data();
        T* out = y.data();
        for (std::size_t i = 0; i < batch * seq_len; ++i) {
            const std::size_t row = last_indices_[i];
            if (row >= table_.value.dim(0)) {
                throw RuntimeError("ShapeMismatch",
                                   "embedding index " + std::to_string(row) +
                                       " outside table of " +
                                       std::to_string(table_.value.dim(0)) + " rows");
            }
            std::copy(tab + row * dim_, tab + (row + 1) * dim_, out + i * dim_);
        }
        return y;
    }

    void backward(const Tensor<T>& dy) {
        if (dy.size() != batch_ * seq_len_ * dim_) {
            throw RuntimeError("ShapeMismatch", "embedding backward shape mismatch");
        }
        T* grad = table_.grad.data();
        const T* d = dy.data();
        for (std::size_t i = 0; i < last_indices_.size(); ++i) {
            const std::size_t row = last_indices_[i];
            T* g = grad + row * dim_;
            const T* src = d + i * dim_;
            for (std::size_t j = 0; j < dim_; ++j) g[j] += src[j];
        }
        table_.accumulate_done();
    }

    Param<T>& table() { return table_; }
    std::size_t dim() const { return dim_; }

private:
    Param<T> table_;
    std::size_t dim_;
    std::vector<std::uint8_t> last_indices_;
    std::size_t batch_ = 0, seq_len_ = 0;
};

// Fully connected layer, y = act(xW + b).
template <typename T>
class Dense {
public:
    Dense(const std::string& name, std::size_t in, std::size_t out, Activation act, Rng& rng)
        : w_(name + ".w", {in, out}), b_(name + ".b", {out}), in_(in), out_(out), act_(act) {
        glorot_uniform(w_.value, in, out, rng);
    }

    Tensor<T> forward(const Tensor<T>& x) {
        const std::size_t batch = x.size() / in_;
        if (batch * in_ != x.size()) {
            throw RuntimeError("ShapeMismatch",
                               "dense input of " + std::to_string(x.size()) +
                                   " elements is not a multiple of fan-in " +
                                   std::to_string(in_));
        }
        y_ = Tensor<T>({batch, out_});
        auto ym = y_.mat(batch, out_);
        ym.noalias() = x.mat(batch, in_) * w_.value.mat(in_, out_);
        ym.rowwise() += b_.value.vec().transpose();
        detail::apply_activation<T>(ym, act_);
        return y_;
    }

    // x must be the same tensor given to forward.
    Tensor<T> backward(const Tensor<T>& dy, const Tensor<T>& x) {
        const std::size_t batch = x.size() / in_;
        Tensor<T> da = dy;
        detail::activation_backward<T>(da.mat(batch, out_), y_.mat(batch, out_), act_);
        w_.grad.mat(in_, out_).noalias() += x.mat(batch, in_).transpose() * da.mat(batch, out_);
        b_.grad.vec() += da.mat(batch, out_).colwise().sum().transpose();
        Tensor<T> dx({batch, in_});
        dx.mat(batch, in_).noalias() = da.mat(batch, out_) * w_.value.mat(in_, out_).transpose();
        w_.accumulate_done();
        b_.accumulate_done();
        return dx;
    }

    Param<T>& weights() { return w_; }
    Param<T>& bias() { return b_; }
    std::size_t fan_in() const { return in_; }
    std::size_t fan_out() const { return out_; }

private:
    Param<T> w_, b_;
    std::size_t in_, out_;
    Activation act_;
    Tensor<T> y_;
};

// Valid 1-D convolution over the time axis, stride 1.
// x: [B, T, E] -> y: [B, T - width + 1, F].
template <typename T>
class Conv1d {
public:
    Conv1d(const std::string& name, std::size_t width, std::size_t channels,
           std::size_t filters, Rng& rng)
        : w_(name + ".w", {width, channels, filters}),
          b_(name + ".b", {filters}),
          width_(width),
          channels_(channels),
          filters_(filters) {
        glorot_uniform(w_.value, width * channels, filters, rng);
    }

    Tensor<T> forward(const Tensor<T>& x) {
        const auto [batch, tlen] = check_input(x);
        const std::size_t tout = tlen - width_ + 1;
        Tensor<T> col = im2col(x, batch, tlen);
        Tensor<T> y({batch, tout, filters_});
        auto ym = y.mat(batch * tout, filters_);
        ym.noalias() = col.mat(batch * tout, width_ * channels_) *
                       w_.value.mat(width_ * channels_, filters_);
        ym.rowwise() += b_.value.vec().transpose();
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy, const Tensor<T>& x) {
        const auto [batch, tlen] = check_input(x);
        const std::size_t tout = tlen - width_ + 1;
        const std::size_t k = width_ * channels_;
        Tensor<T> col = im2col(x, batch, tlen);
        w_.grad.mat(k, filters_).noalias() +=
            col.mat(batch * tout, k).transpose() * dy.mat(batch * tout, filters_);
        b_.grad.vec() += dy.mat(batch * tout, filters_).colwise().sum().transpose();

        Tensor<T> dcol({batch * tout, k});
        dcol.mat(batch * tout, k).noalias() =
            dy.mat(batch * tout, filters_) * w_.value.mat(k, filters_).transpose();

        Tensor<T> dx({batch, tlen, channels_});
        T* dxp = dx.data();
        const T* dcp = dcol.data();
        for (std::size_t bi = 0; bi < batch; ++bi) {
            for (std::size_t t = 0; t < tout; ++t) {
                const T* src = dcp + (bi * tout + t) * k;
                T* dst = dxp + (bi * tlen + t) * channels_;
                for (std::size_t j = 0; j < k; ++j) dst[j] += src[j];
            }
        }
        w_.accumulate_done();
        b_.accumulate_done();
        return dx;
    }

    Param<T>& weights() { return w_; }
    Param<T>& bias() { return b_; }
    std::size_t width() const { return width_; }
    std::size_t filters() const { return filters_; }

private:
    std::pair<std::size_t, std::size_t> check_input(const Tensor<T>& x) const {
        if (x.rank() != 3 || x.dim(2) != channels_) {
            throw RuntimeError("ShapeMismatch", "conv1d expects [B,T," +
                                                    std::to_string(channels_) + "], got " +
                                                    shape_string(x.shape()));
        }
        if (x.dim(1) < width_) {
            throw RuntimeError("ShapeMismatch",
                               "conv width " + std::to_string(width_) +
                                   " exceeds sequence length " + std::to_string(x.dim(1)));
        }
        return {x.dim(0), x.dim(1)};
    }

    Tensor<T> im2col(const Tensor<T>& x, std::size_t batch, std::size_t tlen) const {
        const std::size_t tout = tlen - width_ + 1;
        const std::size_t k = width_ * channels_;
        Tensor<T> col({batch * tout, k});
        const T* xp = x.data();
        T* cp = col.data();
        for (std::size_t bi = 0; bi < batch; ++bi) {
            const T* row = xp + bi * tlen * channels_;
            for (std::size_t t = 0; t < tout; ++t) {
                std::copy(row + t * channels_, row + t * channels_ + k,
                          cp + (bi * tout + t) * k);
            }
        }
        return col;
    }

    Param<T> w_, b_;
    std::size_t width_, channels_, filters_;
};

// Per-feature maximum over the whole time axis; gradient routes to the first
// maximal position on ties.
template <typename T>
class GlobalMaxPool {
public:
    Tensor<T> forward(const Tensor<T>& x) {
        if (x.rank() != 3 || x.dim(1) == 0) {
            throw RuntimeError("ShapeMismatch",
                               "global max pool expects [B,T>=1,F], got " +
                                   shape_string(x.shape()));
        }
        const std::size_t batch = x.dim(0), tlen = x.dim(1), feat = x.dim(2);
        tlen_ = tlen;
        argmax_.assign(batch * feat, 0);
        Tensor<T> y({batch, feat});
        const T* xp = x.data();
        T* yp = y.data();
        for (std::size_t bi = 0; bi < batch; ++bi) {
            const T* base = xp + bi * tlen * feat;
            T* out = yp + bi * feat;
            std::copy(base, base + feat, out);
            std::uint32_t* arg = argmax_.data() + bi * feat;
            for (std::size_t t = 1; t < tlen; ++t) {
                const T* row = base + t * feat;
                for (std::size_t f = 0; f < feat; ++f) {
                    if (row[f] > out[f]) {
                        out[f] = row[f];
                        arg[f] = static_cast<std::uint32_t>(t);
                    }
                }
            }
        }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) {
        const std::size_t batch = dy.dim(0), feat = dy.dim(1);
        Tensor<T> dx({batch, tlen_, feat});
        const T* dp = dy.data();
        T* xp = dx.data();
        for (std::size_t bi = 0; bi < batch; ++bi) {
            for (std::size_t f = 0; f < feat; ++f) {
                const std::size_t t = argmax_[bi * feat + f];
                xp[(bi * tlen_ + t) * feat + f] = dp[bi * feat + f];
            }
        }
        return dx;
    }

private:
    std::vector<std::uint32_t> argmax_;
    std::size_t tlen_ = 0;
};

// Non-overlapping max pooling over time: window == stride. A trailing
// remainder shorter than the window is dropped.
template <typename T>
class TemporalMaxPool {
public:
    explicit TemporalMaxPool(std::size_t window) : window_(window) {}

    Tensor<T> forward(const Tensor<T>& x) {
        if (x.rank() != 3 || x.dim(1) < window_) {
            throw RuntimeError("ShapeMismatch",
                               "temporal max pool needs T >= " + std::to_string(window_));
        }
        const std::size_t batch = x.dim(0), tlen = x.dim(1), feat = x.dim(2);
        const std::size_t tout = tlen / window_;
        tlen_ = tlen;
        argmax_.assign(batch * tout * feat, 0);
        Tensor<T> y({batch, tout, feat});
        const T* xp = x.data();
        T* yp = y.data();
        for (std::size_t bi = 0; bi < batch; ++bi) {
            for (std::size_t t = 0; t < tout; ++t) {
                const T* win = xp + (bi * tlen + t * window_) * feat;
                T* out = yp + (bi * tout + t) * feat;
                std::uint32_t* arg = argmax_.data() + (bi * tout + t) * feat;
                std::copy(win, win + feat, out);
                for (std::size_t o = 1; o < window_; ++o) {
                    const T* row = win + o * feat;
                    for (std::size_t f = 0; f < feat; ++f) {
                        if (row[f] > out[f]) {
                            out[f] = row[f];
                            arg[f] = static_cast<std::uint32_t>(o);
                        }
                    }
                }
            }
        }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) {
        const std::size_t batch = dy.dim(0), tout = dy.dim(1), feat = dy.dim(2);
        Tensor<T> dx({batch, tlen_, feat});
        const T* dp = dy.data();
        T* xp = dx.data();
        for (std::size_t bi = 0; bi < batch; ++bi) {
            for (std::size_t t = 0; t < tout; ++t) {
                for (std::size_t f = 0; f < feat; ++f) {
                    const std::size_t o = argmax_[(bi * tout + t) * feat + f];
                    xp[(bi * tlen_ + t * window_ + o) * feat + f] =
                        dp[(bi * tout + t) * feat + f];
                }
            }
        }
        return dx;
    }

private:
    std::size_t window_;
    std::vector<std::uint32_t> argmax_;
    std::size_t tlen_ = 0;
};

// Inverted dropout: zero with probability `rate` and scale survivors by
// 1/(1-rate) in training mode; identity at inference.
template <typename T>
class Dropout {
public:
    explicit Dropout(double rate) : rate_(rate) {
        if (rate < 0.0 || rate >= 1.0) {
            throw RuntimeError("InvalidRate", "dropout rate must be in [0,1)");
        }
    }

    Tensor<T> forward(const Tensor<T>& x, bool training, Rng& rng) {
        training_ = training && rate_ > 0.0;
        if (!training_) return x;
        mask_.assign(x.size(), T(0));
        const T scale = static_cast<T>(1.0 / (1.0 - rate_));
        Tensor<T> y(x.shape());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!rng.bernoulli(rate_)) {
                mask_[i] = scale;
                y[i] = x[i] * scale;
            }
        }
        return y;
    }

    Tensor<T> backward(const Tensor<T>& dy) {
        if (!training_) return dy;
        Tensor<T> dx(dy.shape());
        for (std::size_t i = 0; i < dy.size(); ++i) dx[i] = dy[i] * mask_[i];
        return dx;
    }

    double rate() const { return rate_; }

private:
    double rate_;
    bool training_ = false;
    std::vector<T> mask_;
};

}  // namespace dgakit::nn

#pragma once

#include <string>
#include <vector>

#include "dgakit/nn/layers.hpp"
#include "dgakit/nn/tensor.hpp"

namespace dgakit::nn {

// Sequence-to-vector LSTM: runs the standard four-gate recurrence over the
// full input length and returns the final hidden state. Gate parameters are
// kept as four [(E+H), H] matrices (packed into one [E+H, 4H] block for the
// per-step GEMM); caches are time-major for contiguous per-step views.
template <typename T>
class Lstm {
public:
    Lstm(const std::string& name, std::size_t input_dim, std::size_t hidden, Rng& rng)
        : input_dim_(input_dim), hidden_(hidden) {
        const char* gates[4] = {"i", "f", "g", "o"};
        for (int k = 0; k < 4; ++k) {
            w_[k] = Param<T>(name + ".w_" + gates[k], {input_dim + hidden, hidden});
            b_[k] = Param<T>(name + ".b_" + gates[k], {hidden});
            glorot_uniform(w_[k].value, input_dim + hidden, hidden, rng);
        }
        // Forget-gate bias starts at 1 so early training does not flush the
        // cell state.
        b_[1].value.fill(T(1));
    }

    // x: [B, T, E] -> [B, H]
    Tensor<T> forward(const Tensor<T>& x) {
        if (x.rank() != 3 || x.dim(2) != input_dim_) {
            throw RuntimeError("ShapeMismatch", "lstm expects [B,T," +
                                                    std::to_string(input_dim_) + "], got " +
                                                    shape_string(x.shape()));
        }
        const std::size_t batch = x.dim(0), tlen = x.dim(1);
        batch_ = batch;
        tlen_ = tlen;
        const std::size_t zdim = input_dim_ + hidden_;

        pack_weights();
        zcat_ = Tensor<T>({tlen, batch, zdim});
        acts_ = Tensor<T>({tlen, batch, 4 * hidden_});
        cell_ = Tensor<T>({tlen, batch, hidden_});
        tanh_cell_ = Tensor<T>({tlen, batch, hidden_});

        Tensor<T> h({batch, hidden_});
        const T* xp = x.data();
        for (std::size_t t = 0; t < tlen; ++t) {
            T* z = zcat_.data() + t * batch * zdim;
            const T* hp = h.data();
            for (std::size_t bi = 0; bi < batch; ++bi) {
                std::copy(xp + (bi * tlen + t) * input_dim_,
                          xp + (bi * tlen + t + 1) * input_dim_, z + bi * zdim);
                std::copy(hp + bi * hidden_, hp + (bi + 1) * hidden_,
                          z + bi * zdim + input_dim_);
            }
            MatMap<T> zt(z, batch, zdim);
            MatMap<T> at(acts_.data() + t * batch * 4 * hidden_, batch, 4 * hidden_);
            at.noalias() = zt * packed_w_.mat(zdim, 4 * hidden_);
            at.rowwise() += packed_b_.vec().transpose();

            auto gate = [&](int k) {
                return Eigen::Map<MatrixRM<T>, 0, Eigen::OuterStride<>>(
                    at.data() + k * static_cast<Eigen::Index>(hidden_),
                    static_cast<Eigen::Index>(batch), static_cast<Eigen::Index>(hidden_),
                    Eigen::OuterStride<>(static_cast<Eigen::Index>(4 * hidden_)));
            };
            auto ig = gate(0), fg = gate(1), gg = gate(2), og = gate(3);
            ig = (T(1) / (T(1) + (-ig.array()).exp())).matrix();
            fg = (T(1) / (T(1) + (-fg.array()).exp())).matrix();
            gg = gg.array().tanh().matrix();
            og = (T(1) / (T(1) + (-og.array()).exp())).matrix();

            MatMap<T> ct(cell_.data() + t * batch * hidden_, batch, hidden_);
            if (t == 0) {
                ct = (ig.array() * gg.array()).matrix();
            } else {
                ConstMatMap<T> cprev(cell_.data() + (t - 1) * batch * hidden_, batch, hidden_);
                ct = (fg.array() * cprev.array() + ig.array() * gg.array()).matrix();
            }
            MatMap<T> tct(tanh_cell_.data() + t * batch * hidden_, batch, hidden_);
            tct = ct.array().tanh().matrix();
            h.mat(batch, hidden_) = (og.array() * tct.array()).matrix();
        }
        return h;
    }

    // dh: [B, H] gradient of the final hidden state -> dx: [B, T, E]
    Tensor<T> backward(const Tensor<T>& dh_final) {
        const std::size_t batch = batch_, tlen = tlen_;
        const std::size_t zdim = input_dim_ + hidden_;
        Tensor<T> dw_packed({zdim, 4 * hidden_});
        Tensor<T> db_packed({4 * hidden_});
        Tensor<T> dx({batch, tlen, input_dim_});

        MatrixRM<T> dh = dh_final.mat(batch, hidden_);
        MatrixRM<T> dc = MatrixRM<T>::Zero(batch, hidden_);
        MatrixRM<T> dz(batch, 4 * hidden_);

        for (std::size_t t = tlen; t-- > 0;) {
            ConstMatMap<T> at(acts_.data() + t * batch * 4 * hidden_, batch, 4 * hidden_);
            auto gate = [&](int k) {
                return Eigen::Map<const MatrixRM<T>, 0, Eigen::OuterStride<>>(
                    at.data() + k * static_cast<Eigen::Index>(hidden_),
                    static_cast<Eigen::Index>(batch), static_cast<Eigen::Index>(hidden_),
                    Eigen::OuterStride<>(static_cast<Eigen::Index>(4 * hidden_)));
            };
            auto ig = gate(0), fg = gate(1), gg = gate(2), og = gate(3);
            ConstMatMap<T> tct(tanh_cell_.data() + t * batch * hidden_, batch, hidden_);

            MatrixRM<T> d_o = (dh.array() * tct.array()).matrix();
            dc.array() += dh.array() * og.array() * (T(1) - tct.array().square());

            MatrixRM<T> d_i = (dc.array() * gg.array()).matrix();
            MatrixRM<T> d_g = (dc.array() * ig.array()).matrix();
            MatrixRM<T> d_f(batch, hidden_);
            if (t == 0) {
                d_f.setZero();
            } else {
                ConstMatMap<T> cprev(cell_.data() + (t - 1) * batch * hidden_, batch, hidden_);
                d_f = (dc.array() * cprev.array()).matrix();
            }

            dz.block(0, 0, batch, hidden_) =
                (d_i.array() * ig.array() * (T(1) - ig.array())).matrix();
            dz.block(0, hidden_, batch, hidden_) =
                (d_f.array() * fg.array() * (T(1) - fg.array())).matrix();
            dz.block(0, 2 * hidden_, batch, hidden_) =
                (d_g.array() * (T(1) - gg.array().square())).matrix();
            dz.block(0, 3 * hidden_, batch, hidden_) =
                (d_o.array() * og.array() * (T(1) - og.array())).matrix();

            ConstMatMap<T> zt(zcat_.data() + t * batch * zdim, batch, zdim);
            dw_packed.mat(zdim, 4 * hidden_).noalias() += zt.transpose() * dz;
            db_packed.vec() += dz.colwise().sum().transpose();

            MatrixRM<T> dzcat = dz * packed_w_.mat(zdim, 4 * hidden_).transpose();
            T* dxp = dx.data();
            for (std::size_t bi = 0; bi < batch; ++bi) {
                const T* src = dzcat.data() + bi * zdim;
                std::copy(src, src + input_dim_, dxp + (bi * tlen + t) * input_dim_);
            }
            dh = dzcat.rightCols(hidden_);
            dc = (dc.array() * fg.array()).matrix();
        }

        for (int k = 0; k < 4; ++k) {
            auto wg = w_[k].grad.mat(zdim, hidden_);
            auto bg = b_[k].grad.vec();
            for (std::size_t r = 0; r < zdim; ++r) {
                const T* src = dw_packed.data() + r * 4 * hidden_ + k * hidden_;
                T* dst = w_[k].grad.data() + r * hidden_;
                for (std::size_t c = 0; c < hidden_; ++c) dst[c] += src[c];
            }
            (void)wg;
            for (std::size_t c = 0; c < hidden_; ++c) {
                bg[static_cast<Eigen::Index>(c)] += db_packed[k * hidden_ + c];
            }
            w_[k].accumulate_done();
            b_[k].accumulate_done();
        }
        return dx;
    }

    void release_caches() {
        zcat_ = Tensor<T>();
        acts_ = Tensor<T>();
        cell_ = Tensor<T>();
        tanh_cell_ = Tensor<T>();
    }

    std::array<Param<T>, 4>& gate_weights() { return w_; }
    std::array<Param<T>, 4>& gate_biases() { return b_; }
    std::size_t hidden() const { return hidden_; }
    std::size_t input_dim() const { return input_dim_; }

private:
    void pack_weights() {
        const std::size_t zdim = input_dim_ + hidden_;
        packed_w_ = Tensor<T>({zdim, 4 * hidden_});
        packed_b_ = Tensor<T>({4 * hidden_});
        for (int k = 0; k < 4; ++k) {
            for (std::size_t r = 0; r < zdim; ++r) {
                std::copy(w_[k].value.data() + r * hidden_,
                          w_[k].value.data() + (r + 1) * hidden_,
                          packed_w_.data() + r * 4 * hidden_ + k * hidden_);
            }
            std::copy(b_[k].value.data(), b_[k].value.data() + hidden_,
                      packed_b_.data() + k * hidden_);
        }
    }

    std::size_t input_dim_, hidden_;
    std::array<Param<T>, 4> w_;
    std::array<Param<T>, 4> b_;
    Tensor<T> packed_w_, packed_b_;
    Tensor<T> zcat_, acts_, cell_, tanh_cell_;
    std::size_t batch_ = 0, tlen_ = 0;
};

}  // namespace dgakit::nn

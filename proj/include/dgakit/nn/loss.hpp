#pragma once

#include <cmath>

#include "dgakit/nn/tensor.hpp"

namespace dgakit::nn {

inline constexpr double kBceClamp = 1e-7;

template <typename T>
struct BceResult {
    double loss = 0.0;
    Tensor<T> dpred;
};

// Mean binary cross-entropy over the batch with predictions clamped to
// [eps, 1-eps]; the gradient is evaluated at the clamped value.
template <typename T>
BceResult<T> binary_cross_entropy(const Tensor<T>& pred, const Tensor<T>& labels,
                                  bool checked = false) {
    if (pred.size() != labels.size() || pred.size() == 0) {
        throw RuntimeError("ShapeMismatch", "prediction/label size mismatch");
    }
    const std::size_t n = pred.size();
    BceResult<T> out;
    out.dpred = Tensor<T>(pred.shape());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p_raw = static_cast<double>(pred[i]);
        if (checked && !(p_raw > 0.0 && p_raw < 1.0)) {
            throw RuntimeError("InvalidPrediction",
                               "prediction " + std::to_string(p_raw) + " outside (0,1)");
        }
        const double p = std::min(1.0 - kBceClamp, std::max(kBceClamp, p_raw));
        const double y = static_cast<double>(labels[i]);
        total += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
        out.dpred[i] = static_cast<T>((p - y) / (p * (1.0 - p)) / static_cast<double>(n));
    }
    out.loss = total / static_cast<double>(n);
    return out;
}

}  // namespace dgakit::nn

#pragma once

#include <cmath>

#include "dgakit/nn/tensor.hpp"
#include "dgakit/rng.hpp"

namespace dgakit::nn {

// Glorot/Xavier uniform: limit = sqrt(6 / (fan_in + fan_out)).
template <typename T>
void glorot_uniform(Tensor<T>& t, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = static_cast<T>(rng.uniform(-limit, limit));
    }
}

}  // namespace dgakit::nn

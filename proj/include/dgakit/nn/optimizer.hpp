#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dgakit/nn/layers.hpp"

namespace dgakit::nn {

enum class OptKind { sgd, adam, rmsprop };

inline const char* opt_kind_name(OptKind k) {
    switch (k) {
        case OptKind::sgd: return "sgd";
        case OptKind::adam: return "adam";
        case OptKind::rmsprop: return "rmsprop";
    }
    return "?";
}

inline OptKind opt_kind_from(const std::string& name) {
    if (name == "sgd") return OptKind::sgd;
    if (name == "adam") return OptKind::adam;
    if (name == "rmsprop") return OptKind::rmsprop;
    throw DataError("UnknownOptimizer", "unknown optimizer '" + name + "'");
}

struct OptimizerConfig {
    OptKind kind = OptKind::adam;
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double rho = 0.9;  // rmsprop decay
};

// Updates a fixed parameter set in place. Moment buffers are keyed by
// position, so the same parameter list (same order) must be passed on every
// step.
template <typename T>
class Optimizer {
public:
    explicit Optimizer(OptimizerConfig cfg = {}) : cfg_(cfg) {}

    void step(const std::vector<Param<T>*>& params) {
        for (const Param<T>* p : params) {
            if (!p->grad_ready) {
                throw RuntimeError("MissingGradients",
                                   "parameter '" + p->name + "' has no accumulated gradient");
            }
        }
        if (m_.empty()) {
            for (const Param<T>* p : params) {
                m_.emplace_back(p->value.shape());
                if (cfg_.kind != OptKind::sgd) v_.emplace_back(p->value.shape());
            }
        }
        ++step_;
        const double t = static_cast<double>(step_);
        const double bc1 = 1.0 - std::pow(cfg_.beta1, t);
        const double bc2 = 1.0 - std::pow(cfg_.beta2, t);

        for (std::size_t k = 0; k < params.size(); ++k) {
            Param<T>& p = *params[k];
            const std::size_t n = p.value.size();
            switch (cfg_.kind) {
                case OptKind::sgd: {
                    const T lr = static_cast<T>(cfg_.learning_rate);
                    for (std::size_t i = 0; i < n; ++i) p.value[i] -= lr * p.grad[i];
                    break;
                }
                case OptKind::adam: {
                    Tensor<T>& m = m_[k];
                    Tensor<T>& v = v_[k];
                    for (std::size_t i = 0; i < n; ++i) {
                        const double g = static_cast<double>(p.grad[i]);
                        const double mi = cfg_.beta1 * static_cast<double>(m[i]) +
                                          (1.0 - cfg_.beta1) * g;
                        const double vi = cfg_.beta2 * static_cast<double>(v[i]) +
                                          (1.0 - cfg_.beta2) * g * g;
                        m[i] = static_cast<T>(mi);
                        v[i] = static_cast<T>(vi);
                        p.value[i] -= static_cast<T>(cfg_.learning_rate * (mi / bc1) /
                                                     (std::sqrt(vi / bc2) + cfg_.epsilon));
                    }
                    break;
                }
                case OptKind::rmsprop: {
                    Tensor<T>& v = v_[k];
                    for (std::size_t i = 0; i < n; ++i) {
                        const double g = static_cast<double>(p.grad[i]);
                        const double vi =
                            cfg_.rho * static_cast<double>(v[i]) + (1.0 - cfg_.rho) * g * g;
                        v[i] = static_cast<T>(vi);
                        p.value[i] -= static_cast<T>(cfg_.learning_rate * g /
                                                     (std::sqrt(vi) + cfg_.epsilon));
                    }
                    break;
                }
            }
            p.clear_grad();
        }
    }

    std::uint64_t steps() const noexcept { return step_; }
    const OptimizerConfig& config() const noexcept { return cfg_; }

private:
    OptimizerConfig cfg_;
    std::uint64_t step_ = 0;
    std::vector<Tensor<T>> m_, v_;
};

}  // namespace dgakit::nn

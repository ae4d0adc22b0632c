#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "dgakit/error.hpp"

namespace dgakit::nn {

template <typename T>
using MatrixRM = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MatMap = Eigen::Map<MatrixRM<T>>;
template <typename T>
using ConstMatMap = Eigen::Map<const MatrixRM<T>>;
template <typename T>
using VecMap = Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, 1>>;
template <typename T>
using ConstVecMap = Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>;

// Dense row-major tensor. Shape algebra is strict: any mismatch throws rather
// than broadcasting.
template <typename T>
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(std::vector<std::size_t> shape)
        : shape_(std::move(shape)), data_(checked_size(shape_), T(0)) {}

    Tensor(std::initializer_list<std::size_t> shape)
        : Tensor(std::vector<std::size_t>(shape)) {}

    static Tensor zeros(std::vector<std::size_t> shape) { return Tensor(std::move(shape)); }

    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    std::size_t rank() const noexcept { return shape_.size(); }
    std::size_t dim(std::size_t i) const { return shape_.at(i); }
    std::size_t size() const noexcept { return data_.size(); }

    T* data() noexcept { return data_.data(); }
    const T* data() const noexcept { return data_.data(); }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    void fill(T v) { std::fill(data_.begin(), data_.end(), v); }
    void zero() { fill(T(0)); }

    // Reinterpret the buffer with a new shape of identical volume.
    Tensor reshaped(std::vector<std::size_t> shape) const {
        Tensor out;
        out.shape_ = std::move(shape);
        if (checked_size(out.shape_) != data_.size()) {
            throw RuntimeError("ShapeMismatch", "reshape changes element count");
        }
        out.data_ = data_;
        return out;
    }

    // 2-D Eigen view over the flattened buffer.
    MatMap<T> mat(std::size_t rows, std::size_t cols) {
        require_volume(rows * cols);
        return MatMap<T>(data_.data(), static_cast<Eigen::Index>(rows),
                         static_cast<Eigen::Index>(cols));
    }
    ConstMatMap<T> mat(std::size_t rows, std::size_t cols) const {
        require_volume(rows * cols);
        return ConstMatMap<T>(data_.data(), static_cast<Eigen::Index>(rows),
                              static_cast<Eigen::Index>(cols));
    }

    VecMap<T> vec() {
        return VecMap<T>(data_.data(), static_cast<Eigen::Index>(data_.size()));
    }
    ConstVecMap<T> vec() const {
        return ConstVecMap<T>(data_.data(), static_cast<Eigen::Index>(data_.size()));
    }

    bool all_finite() const noexcept {
        for (const T& v : data_) {
            if (!std::isfinite(static_cast<double>(v))) return false;
        }
        return true;
    }

    bool same_shape(const Tensor& other) const noexcept { return shape_ == other.shape_; }

    template <typename U>
    Tensor<U> cast() const {
        Tensor<U> out(shape_);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            out[i] = static_cast<U>(data_[i]);
        }
        return out;
    }

private:
    static std::size_t checked_size(const std::vector<std::size_t>& shape) {
        return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                               [](std::size_t a, std::size_t b) { return a * b; });
    }

    void require_volume(std::size_t v) const {
        if (v != data_.size()) {
            throw RuntimeError("ShapeMismatch",
                               "matrix view of " + std::to_string(v) +
                                   " elements over tensor of " + std::to_string(data_.size()));
        }
    }

    std::vector<std::size_t> shape_;
    std::vector<T> data_;
};

inline std::string shape_string(const std::vector<std::size_t>& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

}  // namespace dgakit::nn

#ifndef ANDI_TENSOR_HPP
#define ANDI_TENSOR_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "andi/errors.hpp"

namespace andi::nn {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MapMat = Eigen::Map<Mat<T>>;
template <typename T>
using CMapMat = Eigen::Map<const Mat<T>>;
template <typename T>
using StrideMapMat = Eigen::Map<Mat<T>, 0, Eigen::OuterStride<>>;
template <typename T>
using CStrideMapMat = Eigen::Map<const Mat<T>, 0, Eigen::OuterStride<>>;

// Dense row-major n-d array with an optional same-shape gradient slot.
template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> data;
    std::vector<T> grad;  // empty until alloc_grad()

    Tensor() = default;

    static Tensor zeros(std::vector<int> s) {
        Tensor t;
        t.shape = std::move(s);
        t.data.assign(static_cast<std::size_t>(t.count()), T(0));
        return t;
    }

    std::int64_t count() const {
        std::int64_t n = 1;
        for (int d : shape) {
            if (d <= 0) throw shape_error("tensor: nonpositive dimension");
            n *= d;
        }
        return n;
    }

    int rank() const { return static_cast<int>(shape.size()); }

    int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }

    void alloc_grad() { grad.assign(data.size(), T(0)); }

    void zero_grad() {
        if (!grad.empty()) std::fill(grad.begin(), grad.end(), T(0));
    }

    std::string shape_str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < shape.size(); ++i)
            s += (i ? "," : "") + std::to_string(shape[i]);
        return s + "]";
    }
};

inline std::string shape_str(const std::vector<int>& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i)
        s += (i ? "," : "") + std::to_string(shape[i]);
    return s + "]";
}

// A named learnable tensor; grad is always allocated.
template <typename T>
struct Param {
    std::string name;
    Tensor<T> value;

    Param() = default;
    Param(std::string n, std::vector<int> shape) : name(std::move(n)) {
        value = Tensor<T>::zeros(std::move(shape));
        value.alloc_grad();
    }
};

}  // namespace andi::nn

#endif

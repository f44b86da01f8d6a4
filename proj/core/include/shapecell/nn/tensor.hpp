#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "shapecell/errors.hpp"

namespace shapecell::nn {

using Shape = std::vector<std::int64_t>;

inline std::int64_t shape_numel(const Shape& shape) {
    std::int64_t n = 1;
    for (auto d : shape) n *= d;
    return n;
}

inline std::string shape_to_string(const Shape& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

template <typename T>
struct TensorStorage {
    Shape shape;
    std::vector<T> value;
    std::vector<T> grad;  // empty until first accumulation
    bool requires_grad = false;

    void ensure_grad() {
        if (grad.size() != value.size()) grad.assign(value.size(), T(0));
    }
};

// Shared-storage tensor handle. Copies alias the same buffer; ops that
// produce new values return new storage.
template <typename T>
class TensorT {
public:
    TensorT() : s_(std::make_shared<TensorStorage<T>>()) {}

    explicit TensorT(Shape shape, T fill = T(0)) : s_(std::make_shared<TensorStorage<T>>()) {
        for (auto d : shape)
            if (d < 1) throw InvalidInputError("tensor extents must be positive, got " + shape_to_string(shape));
        s_->shape = std::move(shape);
        s_->value.assign(static_cast<std::size_t>(shape_numel(s_->shape)), fill);
    }

    static TensorT zeros(Shape shape) { return TensorT(std::move(shape)); }

    static TensorT scalar(T v) {
        TensorT t(Shape{1});
        t.s_->value[0] = v;
        return t;
    }

    static TensorT from_data(Shape shape, std::vector<T> data) {
        TensorT t(std::move(shape));
        if (static_cast<std::int64_t>(data.size()) != t.numel())
            throw InvalidInputError("tensor data length " + std::to_string(data.size()) +
                                    " does not match shape " + shape_to_string(t.shape()));
        t.s_->value = std::move(data);
        return t;
    }

    const Shape& shape() const { return s_->shape; }
    std::int64_t dim(std::size_t i) const { return s_->shape.at(i); }
    std::size_t rank() const { return s_->shape.size(); }
    std::int64_t numel() const { return static_cast<std::int64_t>(s_->value.size()); }

    T* data() { return s_->value.data(); }
    const T* data() const { return s_->value.data(); }
    std::vector<T>& values() { return s_->value; }
    const std::vector<T>& values() const { return s_->value; }

    T& operator[](std::int64_t i) { return s_->value[static_cast<std::size_t>(i)]; }
    T operator[](std::int64_t i) const { return s_->value[static_cast<std::size_t>(i)]; }

    bool requires_grad() const { return s_->requires_grad; }
    TensorT& set_requires_grad(bool v) {
        s_->requires_grad = v;
        return *this;
    }

    bool has_grad() const { return !s_->grad.empty(); }
    std::vector<T>& grad() {
        s_->ensure_grad();
        return s_->grad;
    }
    const std::vector<T>& grad() const {
        s_->ensure_grad();
        return s_->grad;
    }

    void zero_grad() {
        if (!s_->grad.empty()) std::fill(s_->grad.begin(), s_->grad.end(), T(0));
    }

    // Deep copy of values (grad and flags are not copied).
    TensorT clone_values() const {
        TensorT t;
        t.s_->shape = s_->shape;
        t.s_->value = s_->value;
        return t;
    }

    bool same_storage(const TensorT& other) const { return s_ == other.s_; }

    std::shared_ptr<TensorStorage<T>> storage() const { return s_; }

private:
    std::shared_ptr<TensorStorage<T>> s_;
};

using Tensor = TensorT<float>;
using DTensor = TensorT<double>;

}  // namespace shapecell::nn

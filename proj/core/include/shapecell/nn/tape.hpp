#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shapecell/errors.hpp"
#include "shapecell/nn/tensor.hpp"

namespace shapecell::nn {

// Thread-local flag controlling whether ops record backward closures.
inline bool& grad_enabled() {
    thread_local bool enabled = true;
    return enabled;
}

class NoGradGuard {
public:
    NoGradGuard() : prev_(grad_enabled()) { grad_enabled() = false; }
    ~NoGradGuard() { grad_enabled() = prev_; }
    NoGradGuard(const NoGradGuard&) = delete;
    NoGradGuard& operator=(const NoGradGuard&) = delete;

private:
    bool prev_;
};

// Reverse-mode tape: ops push backward closures in execution order;
// backward() replays them last-to-first, accumulating gradients.
template <typename T>
class TapeT {
public:
    struct Node {
        std::string name;
        std::function<void()> backward;
    };

    static TapeT& active() {
        thread_local TapeT tape;
        return tape;
    }

    void record(std::string name, std::function<void()> fn) {
        nodes_.push_back(Node{std::move(name), std::move(fn)});
    }

    std::size_t size() const { return nodes_.size(); }

    void clear() { nodes_.clear(); }

    // Seeds d(loss)/d(loss) = 1 and runs all recorded closures in reverse.
    // The tape is consumed: a second backward requires a fresh forward pass.
    void backward_from(TensorT<T> loss) {
        if (loss.numel() != 1)
            throw InvalidInputError("backward requires a scalar loss, got shape " +
                                    shape_to_string(loss.shape()));
        loss.grad()[0] += T(1);
        for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) it->backward();
        nodes_.clear();
    }

private:
    std::vector<Node> nodes_;
};

template <typename T>
void backward(TensorT<T> loss) {
    TapeT<T>::active().backward_from(std::move(loss));
}

}  // namespace shapecell::nn

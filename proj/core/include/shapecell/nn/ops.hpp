#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "shapecell/errors.hpp"
#include "shapecell/nn/gemm.hpp"
#include "shapecell/nn/tape.hpp"
#include "shapecell/nn/tensor.hpp"
#include "shapecell/util/parallel.hpp"
#include "shapecell/util/rng.hpp"

namespace shapecell::nn {

namespace detail {

template <typename T>
bool wants_grad(const TensorT<T>& a) {
    return grad_enabled() && a.requires_grad();
}

template <typename T>
bool wants_grad(const TensorT<T>& a, const TensorT<T>& b) {
    return grad_enabled() && (a.requires_grad() || b.requires_grad());
}

template <typename T>
bool wants_grad(const TensorT<T>& a, const TensorT<T>& b, const TensorT<T>& c) {
    return grad_enabled() && (a.requires_grad() || b.requires_grad() || c.requires_grad());
}

inline void check_same_shape(const Shape& a, const Shape& b, const char* op) {
    if (a != b)
        throw InvalidInputError(std::string(op) + ": shape mismatch " + shape_to_string(a) +
                                " vs " + shape_to_string(b));
}

// Scatters x[C,H,W] into col[C*kh*kw, OH*OW]; out-of-bounds taps read 0.
template <typename T>
void im2col(const T* x, std::int64_t C, std::int64_t H, std::int64_t W, std::int64_t kh,
            std::int64_t kw, std::int64_t stride, std::int64_t pad, std::int64_t OH,
            std::int64_t OW, T* col) {
    const std::int64_t rows = C * kh * kw;
    shapecell::parallel_for(rows, [&](std::int64_t r0, std::int64_t r1) {
        for (std::int64_t r = r0; r < r1; ++r) {
            const std::int64_t c = r / (kh * kw);
            const std::int64_t i = (r / kw) % kh;
            const std::int64_t j = r % kw;
            const T* plane = x + c * H * W;
            T* crow = col + r * OH * OW;
            for (std::int64_t oh = 0; oh < OH; ++oh) {
                const std::int64_t y = oh * stride - pad + i;
                for (std::int64_t ow = 0; ow < OW; ++ow) {
                    const std::int64_t xx = ow * stride - pad + j;
                    crow[oh * OW + ow] = (y >= 0 && y < H && xx >= 0 && xx < W)
                                             ? plane[y * W + xx]
                                             : T(0);
                }
            }
        }
    });
}

// Inverse of im2col: accumulates col back into dx[C,H,W].
template <typename T>
void col2im_add(const T* col, std::int64_t C, std::int64_t H, std::int64_t W, std::int64_t kh,
                std::int64_t kw, std::int64_t stride, std::int64_t pad, std::int64_t OH,
                std::int64_t OW, T* dx) {
    const std::int64_t rows = C * kh * kw;
    for (std::int64_t r = 0; r < rows; ++r) {
        const std::int64_t c = r / (kh * kw);
        const std::int64_t i = (r / kw) % kh;
        const std::int64_t j = r % kw;
        T* plane = dx + c * H * W;
        const T* crow = col + r * OH * OW;
        for (std::int64_t oh = 0; oh < OH; ++oh) {
            const std::int64_t y = oh * stride - pad + i;
            if (y < 0 || y >= H) continue;
            for (std::int64_t ow = 0; ow < OW; ++ow) {
                const std::int64_t xx = ow * stride - pad + j;
                if (xx >= 0 && xx < W) plane[y * W + xx] += crow[oh * OW + ow];
            }
        }
    }
}

}  // namespace detail

template <typename T>
TensorT<T> add(TensorT<T> a, TensorT<T> b) {
    detail::check_same_shape(a.shape(), b.shape(), "add");
    TensorT<T> out(a.shape());
    const std::int64_t n = out.numel();
    for (std::int64_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
    if (detail::wants_grad(a, b)) {
        out.set_requires_grad(true);
        auto as = a.storage(), bs = b.storage(), os = out.storage();
        TapeT<T>::active().record("add", [as, bs, os, n]() {
            os->ensure_grad();
            if (as->requires_grad) {
                as->ensure_grad();
                for (std::int64_t i = 0; i < n; ++i) as->grad[i] += os->grad[i];
            }
            if (bs->requires_grad) {
                bs->ensure_grad();
                for (std::int64_t i = 0; i < n; ++i) bs->grad[i] += os->grad[i];
            }
        });
    }
    return out;
}

template <typename T>
TensorT<T> add_scalar(TensorT<T> x, T c) {
    TensorT<T> out(x.shape());
    const std::int64_t n = out.numel();
    for (std::int64_t i = 0; i < n; ++i) out[i] = x[i] + c;
    if (detail::wants_grad(x)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), os = out.storage();
        TapeT<T>::active().record("add_scalar", [xs, os, n]() {
            os->ensure_grad();
            xs->ensure_grad();
            for (std::int64_t i = 0; i < n; ++i) xs->grad[i] += os->grad[i];
        });
    }
    return out;
}

template <typename T>
TensorT<T> mul(TensorT<T> a, TensorT<T> b) {
    detail::check_same_shape(a.shape(), b.shape(), "mul");
    TensorT<T> out(a.shape());
    const std::int64_t n = out.numel();
    for (std::int64_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
    if (detail::wants_grad(a, b)) {
        out.set_requires_grad(true);
        auto as = a.storage(), bs = b.storage(), os = out.storage();
        TapeT<T>::active().record("mul", [as, bs, os, n]() {
            os->ensure_grad();
            if (as->requires_grad) {
                as->ensure_grad();
                for (std::int64_t i = 0; i < n; ++i) as->grad[i] += os->grad[i] * bs->value[i];
            }
            if (bs->requires_grad) {
                bs->ensure_grad();
                for (std::int64_t i = 0; i < n; ++i) bs->grad[i] += os->grad[i] * as->value[i];
            }
        });
    }
    return out;
}

template <typename T>
TensorT<T> relu(TensorT<T> x) {
    TensorT<T> out(x.shape());
    const std::int64_t n = out.numel();
    for (std::int64_t i = 0; i < n; ++i) out[i] = x[i] > T(0) ? x[i] : T(0);
    if (detail::wants_grad(x)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), os = out.storage();
        TapeT<T>::active().record("relu", [xs, os, n]() {
            os->ensure_grad();
            xs->ensure_grad();
            for (std::int64_t i = 0; i < n; ++i)
                if (xs->value[i] > T(0)) xs->grad[i] += os->grad[i];
        });
    }
    return out;
}

template <typename T>
TensorT<T> sigmoid(TensorT<T> x) {
    TensorT<T> out(x.shape());
    const std::int64_t n = out.numel();
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = static_cast<double>(x[i]);
        out[i] = static_cast<T>(1.0 / (1.0 + std::exp(-v)));
    }
    if (detail::wants_grad(x)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), os = out.storage();
        TapeT<T>::active().record("sigmoid", [xs, os, n]() {
            os->ensure_grad();
            xs->ensure_grad();
            for (std::int64_t i = 0; i < n; ++i) {
                const T s = os->value[i];
                xs->grad[i] += os->grad[i] * s * (T(1) - s);
            }
        });
    }
    return out;
}

template <typename T>
TensorT<T> sum(TensorT<T> x) {
    double acc = 0.0;
    const std::int64_t n = x.numel();
    for (std::int64_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]);
    TensorT<T> out = TensorT<T>::scalar(static_cast<T>(acc));
    if (detail::wants_grad(x)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), os = out.storage();
        TapeT<T>::active().record("sum", [xs, os, n]() {
            os->ensure_grad();
            xs->ensure_grad();
            for (std::int64_t i = 0; i < n; ++i) xs->grad[i] += os->grad[0];
        });
    }
    return out;
}

// x[N,D] * w[D,E] + b[E] -> [N,E]
template <typename T>
TensorT<T> fully_connected(TensorT<T> x, TensorT<T> w, TensorT<T> b) {
    if (x.rank() != 2 || w.rank() != 2 || b.rank() != 1)
        throw InvalidInputError("fully_connected: expected ranks 2/2/1, got " +
                                shape_to_string(x.shape()) + "/" + shape_to_string(w.shape()) +
                                "/" + shape_to_string(b.shape()));
    const std::int64_t N = x.dim(0), D = x.dim(1), E = w.dim(1);
    if (w.dim(0) != D || b.dim(0) != E)
        throw InvalidInputError("fully_connected: incompatible shapes " +
                                shape_to_string(x.shape()) + " x " + shape_to_string(w.shape()) +
                                " + " + shape_to_string(b.shape()));
    TensorT<T> out(Shape{N, E});
    detail::gemm_nn(N, E, D, x.data(), w.data(), out.data());
    for (std::int64_t i = 0; i < N; ++i)
        for (std::int64_t j = 0; j < E; ++j) out[i * E + j] += b[j];
    if (detail::wants_grad(x, w, b)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), ws = w.storage(), bs = b.storage(), os = out.storage();
        TapeT<T>::active().record("fully_connected", [xs, ws, bs, os, N, D, E]() {
            os->ensure_grad();
            const T* g = os->grad.data();
            if (xs->requires_grad) {
                xs->ensure_grad();
                detail::gemm_nt(N, D, E, g, ws->value.data(), xs->grad.data(), true);
            }
            if (ws->requires_grad) {
                ws->ensure_grad();
                detail::gemm_tn(D, E, N, xs->value.data(), g, ws->grad.data(), true);
            }
            if (bs->requires_grad) {
                bs->ensure_grad();
                for (std::int64_t i = 0; i < N; ++i)
                    for (std::int64_t j = 0; j < E; ++j) bs->grad[j] += g[i * E + j];
            }
        });
    }
    return out;
}

// x[N,C,H,W] conv w[K,C,kh,kw] + b[K], zero padding -> [N,K,OH,OW]
template <typename T>
TensorT<T> conv2d(TensorT<T> x, TensorT<T> w, TensorT<T> b, std::int64_t stride = 1,
                  std::int64_t pad = 0) {
    if (x.rank() != 4 || w.rank() != 4 || b.rank() != 1)
        throw InvalidInputError("conv2d: expected ranks 4/4/1, got " +
                                shape_to_string(x.shape()) + "/" + shape_to_string(w.shape()) +
                                "/" + shape_to_string(b.shape()));
    const std::int64_t N = x.dim(0), C = x.dim(1), H = x.dim(2), W = x.dim(3);
    const std::int64_t K = w.dim(0), kh = w.dim(2), kw = w.dim(3);
    if (w.dim(1) != C || b.dim(0) != K)
        throw InvalidInputError("conv2d: incompatible shapes " + shape_to_string(x.shape()) +
                                " vs " + shape_to_string(w.shape()));
    if (stride < 1 || pad < 0) throw InvalidInputError("conv2d: stride must be >=1 and pad >=0");
    const std::int64_t OH = (H + 2 * pad - kh) / stride + 1;
    const std::int64_t OW = (W + 2 * pad - kw) / stride + 1;
    if (OH < 1 || OW < 1)
        throw InvalidInputError("conv2d: kernel " + shape_to_string(w.shape()) +
                                " does not fit input " + shape_to_string(x.shape()));
    const std::int64_t CKK = C * kh * kw, P = OH * OW;
    TensorT<T> out(Shape{N, K, OH, OW});
    shapecell::parallel_for(N, [&](std::int64_t n0, std::int64_t n1) {
        std::vector<T> col(static_cast<std::size_t>(CKK * P));
        for (std::int64_t n = n0; n < n1; ++n) {
            detail::im2col(x.data() + n * C * H * W, C, H, W, kh, kw, stride, pad, OH, OW,
                           col.data());
            T* yn = out.data() + n * K * P;
            detail::gemm_nn(K, P, CKK, w.data(), col.data(), yn);
            for (std::int64_t k = 0; k < K; ++k)
                for (std::int64_t p = 0; p < P; ++p) yn[k * P + p] += b[k];
        }
    });
    if (detail::wants_grad(x, w, b)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), ws = w.storage(), bs = b.storage(), os = out.storage();
        TapeT<T>::active().record("conv2d", [xs, ws, bs, os, N, C, H, W, K, kh, kw, stride, pad,
                                             OH, OW, CKK, P]() {
            os->ensure_grad();
            const T* g = os->grad.data();
            if (bs->requires_grad) {
                bs->ensure_grad();
                for (std::int64_t n = 0; n < N; ++n)
                    for (std::int64_t k = 0; k < K; ++k) {
                        double s = static_cast<double>(bs->grad[k]);
                        const T* gk = g + (n * K + k) * P;
                        for (std::int64_t p = 0; p < P; ++p) s += static_cast<double>(gk[p]);
                        bs->grad[k] = static_cast<T>(s);
                    }
            }
            std::vector<T> col(static_cast<std::size_t>(CKK * P));
            if (ws->requires_grad) {
                ws->ensure_grad();
                for (std::int64_t n = 0; n < N; ++n) {
                    detail::im2col(xs->value.data() + n * C * H * W, C, H, W, kh, kw, stride,
                                   pad, OH, OW, col.data());
                    detail::gemm_nt(K, CKK, P, g + n * K * P, col.data(), ws->grad.data(), true);
                }
            }
            if (xs->requires_grad) {
                xs->ensure_grad();
                for (std::int64_t n = 0; n < N; ++n) {
                    detail::gemm_tn(CKK, P, K, ws->value.data(), g + n * K * P, col.data());
                    detail::col2im_add(col.data(), C, H, W, kh, kw, stride, pad, OH, OW,
                                       xs->grad.data() + n * C * H * W);
                }
            }
        });
    }
    return out;
}

// Non-overlapping window max pooling; ties resolve to the first element
// in row-major window order.
template <typename T>
TensorT<T> maxpool2d(TensorT<T> x, std::int64_t k = 2, std::int64_t stride = 2) {
    if (x.rank() != 4)
        throw InvalidInputError("maxpool2d: expected rank 4, got " + shape_to_string(x.shape()));
    if (k < 1 || stride < 1) throw InvalidInputError("maxpool2d: k and stride must be >=1");
    const std::int64_t N = x.dim(0), C = x.dim(1), H = x.dim(2), W = x.dim(3);
    const std::int64_t OH = (H - k) / stride + 1, OW = (W - k) / stride + 1;
    if (OH < 1 || OW < 1)
        throw InvalidInputError("maxpool2d: window does not fit input " +
                                shape_to_string(x.shape()));
    TensorT<T> out(Shape{N, C, OH, OW});
    auto argmax = std::make_shared<std::vector<std::int64_t>>(
        static_cast<std::size_t>(out.numel()));
    shapecell::parallel_for(N * C, [&](std::int64_t p0, std::int64_t p1) {
        for (std::int64_t pc = p0; pc < p1; ++pc) {
            const T* plane = x.data() + pc * H * W;
            T* oplane = out.data() + pc * OH * OW;
            std::int64_t* aplane = argmax->data() + pc * OH * OW;
            for (std::int64_t oh = 0; oh < OH; ++oh)
                for (std::int64_t ow = 0; ow < OW; ++ow) {
                    T best = plane[(oh * stride) * W + ow * stride];
                    std::int64_t besti = pc * H * W + (oh * stride) * W + ow * stride;
                    for (std::int64_t i = 0; i < k; ++i)
                        for (std::int64_t j = 0; j < k; ++j) {
                            const std::int64_t y = oh * stride + i, xx = ow * stride + j;
                            const T v = plane[y * W + xx];
                            if (v > best) {
                                best = v;
                                besti = pc * H * W + y * W + xx;
                            }
                        }
                    oplane[oh * OW + ow] = best;
                    aplane[oh * OW + ow] = besti;
                }
        }
    });
    if (detail::wants_grad(x)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), os = out.storage();
        const std::int64_t n = out.numel();
        TapeT<T>::active().record("maxpool2d", [xs, os, argmax, n]() {
            os->ensure_grad();
            xs->ensure_grad();
            for (std::int64_t i = 0; i < n; ++i) xs->grad[(*argmax)[i]] += os->grad[i];
        });
    }
    return out;
}

// x[N,C,H,W] -> [N,C], spatial mean
template <typename T>
TensorT<T> global_avg_pool(TensorT<T> x) {
    if (x.rank() != 4)
        throw InvalidInputError("global_avg_pool: expected rank 4, got " +
                                shape_to_string(x.shape()));
    const std::int64_t N = x.dim(0), C = x.dim(1), HW = x.dim(2) * x.dim(3);
    TensorT<T> out(Shape{N, C});
    for (std::int64_t pc = 0; pc < N * C; ++pc) {
        double s = 0.0;
        const T* plane = x.data() + pc * HW;
        for (std::int64_t i = 0; i < HW; ++i) s += static_cast<double>(plane[i]);
        out[pc] = static_cast<T>(s / static_cast<double>(HW));
    }
    if (detail::wants_grad(x)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), os = out.storage();
        TapeT<T>::active().record("global_avg_pool", [xs, os, N, C, HW]() {
            os->ensure_grad();
            xs->ensure_grad();
            const T inv = T(1) / static_cast<T>(HW);
            for (std::int64_t pc = 0; pc < N * C; ++pc) {
                const T g = os->grad[pc] * inv;
                T* dplane = xs->grad.data() + pc * HW;
                for (std::int64_t i = 0; i < HW; ++i) dplane[i] += g;
            }
        });
    }
    return out;
}

// Global max over the spatial plane; ties resolve to the first element in
// row-major order, matching maxpool2d.
template <typename T>
TensorT<T> global_max_pool(TensorT<T> x) {
    if (x.rank() != 4)
        throw InvalidInputError("global_max_pool: expected rank 4, got " +
                                shape_to_string(x.shape()));
    const std::int64_t N = x.dim(0), C = x.dim(1), HW = x.dim(2) * x.dim(3);
    TensorT<T> out(Shape{N, C});
    auto argmax = std::make_shared<std::vector<std::int64_t>>(static_cast<std::size_t>(N * C));
    for (std::int64_t pc = 0; pc < N * C; ++pc) {
        const T* plane = x.data() + pc * HW;
        std::int64_t best = 0;
        for (std::int64_t i = 1; i < HW; ++i)
            if (plane[i] > plane[best]) best = i;
        out[pc] = plane[best];
        (*argmax)[pc] = pc * HW + best;
    }
    if (detail::wants_grad(x)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), os = out.storage();
        TapeT<T>::active().record("global_max_pool", [xs, os, argmax, N, C]() {
            os->ensure_grad();
            xs->ensure_grad();
            for (std::int64_t pc = 0; pc < N * C; ++pc)
                xs->grad[(*argmax)[pc]] += os->grad[pc];
        });
    }
    return out;
}

// Inverted dropout: keeps elements with probability 1-rate and scales by
// 1/(1-rate), so eval mode is the identity.
template <typename T>
TensorT<T> dropout(TensorT<T> x, double rate, bool training, Rng& rng) {
    if (rate < 0.0 || rate >= 1.0)
        throw InvalidInputError("dropout: rate must be in [0,1), got " + std::to_string(rate));
    if (!training || rate == 0.0) return x;
    const std::int64_t n = x.numel();
    auto keep = std::make_shared<std::vector<std::uint8_t>>(static_cast<std::size_t>(n));
    const T scale = static_cast<T>(1.0 / (1.0 - rate));
    TensorT<T> out(x.shape());
    for (std::int64_t i = 0; i < n; ++i) {
        (*keep)[i] = rng.uniform() >= rate ? 1 : 0;
        out[i] = (*keep)[i] ? x[i] * scale : T(0);
    }
    if (detail::wants_grad(x)) {
        out.set_requires_grad(true);
        auto xs = x.storage(), os = out.storage();
        TapeT<T>::active().record("dropout", [xs, os, keep, n, scale]() {
            os->ensure_grad();
            xs->ensure_grad();
            for (std::int64_t i = 0; i < n; ++i)
                if ((*keep)[i]) xs->grad[i] += os->grad[i] * scale;
        });
    }
    return out;
}

// Concatenates rank-2 tensors [N,D_i] along dim 1.
template <typename T>
TensorT<T> concat_cols(const std::vector<TensorT<T>>& xs) {
    if (xs.empty()) throw InvalidInputError("concat_cols: no inputs");
    const std::int64_t N = xs[0].dim(0);
    std::int64_t D = 0;
    for (const auto& x : xs) {
        if (x.rank() != 2 || x.dim(0) != N)
            throw InvalidInputError("concat_cols: inputs must be [N,D_i] with equal N, got " +
                                    shape_to_string(x.shape()));
        D += x.dim(1);
    }
    TensorT<T> out(Shape{N, D});
    std::int64_t off = 0;
    for (const auto& x : xs) {
        const std::int64_t d = x.dim(1);
        for (std::int64_t i = 0; i < N; ++i)
            std::copy_n(x.data() + i * d, d, out.data() + i * D + off);
        off += d;
    }
    bool grad = false;
    for (const auto& x : xs) grad = grad || x.requires_grad();
    if (grad_enabled() && grad) {
        out.set_requires_grad(true);
        std::vector<std::shared_ptr<TensorStorage<T>>> ss;
        for (const auto& x : xs) ss.push_back(x.storage());
        auto os = out.storage();
        TapeT<T>::active().record("concat_cols", [ss, os, N, D]() {
            os->ensure_grad();
            std::int64_t off = 0;
            for (auto& s : ss) {
                const std::int64_t d = s->shape[1];
                if (s->requires_grad) {
                    s->ensure_grad();
                    for (std::int64_t i = 0; i < N; ++i)
                        for (std::int64_t j = 0; j < d; ++j)
                            s->grad[i * d + j] += os->grad[i * D + off + j];
                }
                off += d;
            }
        });
    }
    return out;
}

// Mean cross-entropy over the batch from raw logits [N,K]; numerically
// stabilized by the per-row max shift.
template <typename T>
TensorT<T> softmax_cross_entropy(TensorT<T> logits, const std::vector<std::int64_t>& labels) {
    if (logits.rank() != 2)
        throw InvalidInputError("softmax_cross_entropy: expected [N,K] logits, got " +
                                shape_to_string(logits.shape()));
    const std::int64_t N = logits.dim(0), K = logits.dim(1);
    if (static_cast<std::int64_t>(labels.size()) != N)
        throw InvalidInputError("softmax_cross_entropy: " + std::to_string(labels.size()) +
                                " labels for batch of " + std::to_string(N));
    for (auto l : labels)
        if (l < 0 || l >= K)
            throw InvalidInputError("softmax_cross_entropy: label " + std::to_string(l) +
                                    " out of range for " + std::to_string(K) + " classes");
    auto probs = std::make_shared<std::vector<T>>(static_cast<std::size_t>(N * K));
    double loss_acc = 0.0;
    for (std::int64_t i = 0; i < N; ++i) {
        const T* row = logits.data() + i * K;
        double m = static_cast<double>(row[0]);
        for (std::int64_t k = 1; k < K; ++k) m = std::max(m, static_cast<double>(row[k]));
        double z = 0.0;
        for (std::int64_t k = 0; k < K; ++k) z += std::exp(static_cast<double>(row[k]) - m);
        const double logz = std::log(z);
        for (std::int64_t k = 0; k < K; ++k)
            (*probs)[i * K + k] =
                static_cast<T>(std::exp(static_cast<double>(row[k]) - m - logz));
        loss_acc += logz - (static_cast<double>(row[labels[i]]) - m);
    }
    TensorT<T> out = TensorT<T>::scalar(static_cast<T>(loss_acc / static_cast<double>(N)));
    if (detail::wants_grad(logits)) {
        out.set_requires_grad(true);
        auto xs = logits.storage(), os = out.storage();
        auto lab = std::make_shared<std::vector<std::int64_t>>(labels);
        TapeT<T>::active().record("softmax_cross_entropy", [xs, os, probs, lab, N, K]() {
            os->ensure_grad();
            xs->ensure_grad();
            const T g = os->grad[0] / static_cast<T>(N);
            for (std::int64_t i = 0; i < N; ++i)
                for (std::int64_t k = 0; k < K; ++k) {
                    T p = (*probs)[i * K + k];
                    if (k == (*lab)[i]) p -= T(1);
                    xs->grad[i * K + k] += g * p;
                }
        });
    }
    return out;
}

}  // namespace shapecell::nn

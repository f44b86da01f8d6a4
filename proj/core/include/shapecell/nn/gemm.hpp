#pragma once

#include <cstdint>
#include <vector>

#include "shapecell/util/parallel.hpp"

namespace shapecell::nn::detail {

// Dense matrix products with float64 accumulation. Each output row is
// produced start-to-finish by a single thread with a fixed summation
// order, so results do not depend on the worker count.

// C[M,N] = A[M,K] * B[K,N]   (or += when accumulate)
template <typename T>
void gemm_nn(std::int64_t M, std::int64_t N, std::int64_t K, const T* A, const T* B, T* C,
             bool accumulate = false) {
    shapecell::parallel_for(M, [&](std::int64_t m0, std::int64_t m1) {
        std::vector<double> acc(static_cast<std::size_t>(N));
        for (std::int64_t m = m0; m < m1; ++m) {
            T* crow = C + m * N;
            if (accumulate)
                for (std::int64_t n = 0; n < N; ++n) acc[n] = static_cast<double>(crow[n]);
            else
                std::fill(acc.begin(), acc.end(), 0.0);
            const T* arow = A + m * K;
            for (std::int64_t k = 0; k < K; ++k) {
                const double a = static_cast<double>(arow[k]);
                const T* brow = B + k * N;
                for (std::int64_t n = 0; n < N; ++n) acc[n] += a * static_cast<double>(brow[n]);
            }
            for (std::int64_t n = 0; n < N; ++n) crow[n] = static_cast<T>(acc[n]);
        }
    });
}

// C[M,N] = A^T * B with A[K,M], B[K,N]   (or += when accumulate)
template <typename T>
void gemm_tn(std::int64_t M, std::int64_t N, std::int64_t K, const T* A, const T* B, T* C,
             bool accumulate = false) {
    shapecell::parallel_for(M, [&](std::int64_t m0, std::int64_t m1) {
        std::vector<double> acc(static_cast<std::size_t>(N));
        for (std::int64_t m = m0; m < m1; ++m) {
            T* crow = C + m * N;
            if (accumulate)
                for (std::int64_t n = 0; n < N; ++n) acc[n] = static_cast<double>(crow[n]);
            else
                std::fill(acc.begin(), acc.end(), 0.0);
            for (std::int64_t k = 0; k < K; ++k) {
                const double a = static_cast<double>(A[k * M + m]);
                const T* brow = B + k * N;
                for (std::int64_t n = 0; n < N; ++n) acc[n] += a * static_cast<double>(brow[n]);
            }
            for (std::int64_t n = 0; n < N; ++n) crow[n] = static_cast<T>(acc[n]);
        }
    });
}

// C[M,N] = A * B^T with A[M,K], B[N,K]   (or += when accumulate)
template <typename T>
void gemm_nt(std::int64_t M, std::int64_t N, std::int64_t K, const T* A, const T* B, T* C,
             bool accumulate = false) {
    shapecell::parallel_for(M, [&](std::int64_t m0, std::int64_t m1) {
        for (std::int64_t m = m0; m < m1; ++m) {
            const T* arow = A + m * K;
            T* crow = C + m * N;
            for (std::int64_t n = 0; n < N; ++n) {
                const T* brow = B + n * K;
                double s = accumulate ? static_cast<double>(crow[n]) : 0.0;
                for (std::int64_t k = 0; k < K; ++k)
                    s += static_cast<double>(arow[k]) * static_cast<double>(brow[k]);
                crow[n] = static_cast<T>(s);
            }
        }
    });
}

}  // namespace shapecell::nn::detail

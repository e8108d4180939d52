#pragma once

#include <cstddef>

namespace drad {

/// Row-major matrix kernels used by the batched LSTM. Both backends
/// accumulate every output element over the shared dimension in ascending
/// order, so they agree bit for bit and results do not depend on the number
/// of threads.
namespace kernels {

namespace serial {
/// C(m x n) += A(m x k) * B(k x n)
template <typename T>
void gemm_nn(std::size_t m, std::size_t k, std::size_t n, const T* a, std::size_t lda,
             const T* b, std::size_t ldb, T* c, std::size_t ldc);
/// C(m x n) += A(k x m)^T * B(k x n)
template <typename T>
void gemm_tn(std::size_t m, std::size_t k, std::size_t n, const T* a, std::size_t lda,
             const T* b, std::size_t ldb, T* c, std::size_t ldc);
}  // namespace serial

namespace omp {
template <typename T>
void gemm_nn(std::size_t m, std::size_t k, std::size_t n, const T* a, std::size_t lda,
             const T* b, std::size_t ldb, T* c, std::size_t ldc);
template <typename T>
void gemm_tn(std::size_t m, std::size_t k, std::size_t n, const T* a, std::size_t lda,
             const T* b, std::size_t ldb, T* c, std::size_t ldc);
}  // namespace omp

}  // namespace kernels

enum class Backend { Serial, OpenMP };

template <typename T>
struct KernelSet {
  using Gemm = void (*)(std::size_t, std::size_t, std::size_t, const T*, std::size_t, const T*,
                        std::size_t, T*, std::size_t);
  Gemm gemm_nn;
  Gemm gemm_tn;
  bool parallel;

  static KernelSet select(Backend backend) {
    if (backend == Backend::Serial) {
      return {&kernels::serial::gemm_nn<T>, &kernels::serial::gemm_tn<T>, false};
    }
    return {&kernels::omp::gemm_nn<T>, &kernels::omp::gemm_tn<T>, true};
  }
};

}  // namespace drad

#include "drad/kernels.hpp"

#include <omp.h>

#include <cstdint>

#include "drad/parallel.hpp"

namespace drad {

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

namespace kernels {

namespace serial {

template <typename T>
void gemm_nn(std::size_t m, std::size_t k, std::size_t n, const T* a, std::size_t lda,
             const T* b, std::size_t ldb, T* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T acc = c[i * ldc + j];
      for (std::size_t p = 0; p < k; ++p) acc += a[i * lda + p] * b[p * ldb + j];
      c[i * ldc + j] = acc;
    }
  }
}

template <typename T>
void gemm_tn(std::size_t m, std::size_t k, std::size_t n, const T* a, std::size_t lda,
             const T* b, std::size_t ldb, T* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T acc = c[i * ldc + j];
      for (std::size_t p = 0; p < k; ++p) acc += a[p * lda + i] * b[p * ldb + j];
      c[i * ldc + j] = acc;
    }
  }
}

}  // namespace serial

namespace omp {

// Rows of C are independent; each thread owns whole rows and walks the
// shared dimension in order, streaming contiguous rows of B.
template <typename T>
void gemm_nn(std::size_t m, std::size_t k, std::size_t n, const T* a, std::size_t lda,
             const T* b, std::size_t ldb, T* c, std::size_t ldc) {
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (m * k * n > 32768)
  for (std::int64_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    T* __restrict__ crow = c + i * ldc;
    for (std::size_t p = 0; p < k; ++p) {
      const T av = a[i * lda + p];
      const T* __restrict__ brow = b + p * ldb;
#pragma omp simd
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

// Each thread owns a contiguous block of C rows and streams A and B row by
// row, so its block of C stays in cache for long shared dimensions.
template <typename T>
void gemm_tn(std::size_t m, std::size_t k, std::size_t n, const T* a, std::size_t lda,
             const T* b, std::size_t ldb, T* c, std::size_t ldc) {
#pragma omp parallel if (m * k * n > 32768)
  {
    const auto nt = static_cast<std::size_t>(omp_get_num_threads());
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
    const std::size_t i0 = m * tid / nt;
    const std::size_t i1 = m * (tid + 1) / nt;
    for (std::size_t p = 0; p < k; ++p) {
      const T* arow = a + p * lda;
      const T* __restrict__ brow = b + p * ldb;
      for (std::size_t i = i0; i < i1; ++i) {
        const T av = arow[i];
        T* __restrict__ crow = c + i * ldc;
#pragma omp simd
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

}  // namespace omp

#define DRAD_INSTANTIATE(T)                                                                    \
  template void serial::gemm_nn<T>(std::size_t, std::size_t, std::size_t, const T*, std::size_t, \
                                   const T*, std::size_t, T*, std::size_t);                     \
  template void serial::gemm_tn<T>(std::size_t, std::size_t, std::size_t, const T*, std::size_t, \
                                   const T*, std::size_t, T*, std::size_t);                     \
  template void omp::gemm_nn<T>(std::size_t, std::size_t, std::size_t, const T*, std::size_t,    \
                                const T*, std::size_t, T*, std::size_t);                        \
  template void omp::gemm_tn<T>(std::size_t, std::size_t, std::size_t, const T*, std::size_t,    \
                                const T*, std::size_t, T*, std::size_t);

DRAD_INSTANTIATE(float)
DRAD_INSTANTIATE(double)

#undef DRAD_INSTANTIATE

}  // namespace kernels
}  // namespace drad

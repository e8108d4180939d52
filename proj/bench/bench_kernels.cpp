// Serial reference kernels against the OpenMP kernels at LSTM-shaped sizes.
//   ./bench_kernels --benchmark_filter=gemm
#include <benchmark/benchmark.h>

#include <vector>

#include "drad/kernels.hpp"
#include "drad/lstm.hpp"
#include "drad/lstm_batch.hpp"
#include "drad/rng.hpp"

namespace {

std::vector<float> random_matrix(std::size_t n, std::uint64_t seed) {
  drad::CounterRng rng(seed);
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.uniform(-1.0, 1.0));
  return v;
}

// One recurrent step of a hidden-H layer: (batch x (H + 2)) * ((H + 2) x 4H).
template <drad::Backend B>
void BM_gemm_nn(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  const auto hidden = static_cast<std::size_t>(state.range(1));
  const std::size_t k = hidden + 2, n = 4 * hidden;
  const auto a = random_matrix(batch * k, 1), b = random_matrix(k * n, 2);
  std::vector<float> c(batch * n);
  const auto ks = drad::KernelSet<float>::select(B);
  for (auto _ : state) {
    ks.gemm_nn(batch, k, n, a.data(), k, b.data(), n, c.data(), n);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * batch * k * n));
}

// Weight-gradient accumulation: (batch x (H + 2))^T * (batch x 4H).
template <drad::Backend B>
void BM_gemm_tn(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  const auto hidden = static_cast<std::size_t>(state.range(1));
  const std::size_t m = hidden + 2, n = 4 * hidden;
  const auto a = random_matrix(batch * m, 3), b = random_matrix(batch * n, 4);
  std::vector<float> c(m * n);
  const auto ks = drad::KernelSet<float>::select(B);
  for (auto _ : state) {
    ks.gemm_tn(m, batch, n, a.data(), m, b.data(), n, c.data(), n);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * batch * m * n));
}

template <drad::Backend B>
void BM_lstm_forward(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  const std::size_t steps = 128;
  const std::vector<std::size_t> hidden{128, 128, 128};
  const auto model = drad::init_model<float>(23, hidden, 7);
  const auto x = random_matrix(steps * batch * 2, 5);
  drad::LstmBatch<float> engine(model, B);
  for (auto _ : state) benchmark::DoNotOptimize(engine.forward(x, batch, steps).data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch * steps));
}

}  // namespace

BENCHMARK(BM_gemm_nn<drad::Backend::Serial>)->Args({32, 128})->Args({256, 128})->Args({256, 16});
BENCHMARK(BM_gemm_nn<drad::Backend::OpenMP>)->Args({32, 128})->Args({256, 128})->Args({256, 16});
BENCHMARK(BM_gemm_tn<drad::Backend::Serial>)->Args({32, 128})->Args({256, 128});
BENCHMARK(BM_gemm_tn<drad::Backend::OpenMP>)->Args({32, 128})->Args({256, 128});
BENCHMARK(BM_lstm_forward<drad::Backend::Serial>)->Arg(32);
BENCHMARK(BM_lstm_forward<drad::Backend::OpenMP>)->Arg(32);

BENCHMARK_MAIN();

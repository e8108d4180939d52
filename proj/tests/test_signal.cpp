#include <doctest.h>

#include <cmath>
#include <numbers>

#include "drad/fft.hpp"
#include "drad/rng.hpp"
#include "drad/signal.hpp"
#include "oracles.hpp"

using namespace drad;

TEST_CASE("counter rng is a pure function of key and draw index") {
  CounterRng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CounterRng c(123);
  CHECK(c.next_u64() == mix64(123 + 0x9E3779B97F4A7C15ULL));
  CHECK(hash_seed({1, 2}) != hash_seed({2, 1}));
  CounterRng d(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = d.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(d.index(7) < 7);
  }
  std::vector<int> v{1, 2, 3, 4, 5, 6};
  CounterRng s(4);
  shuffle<int>(v, s);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("noise amplitude scale") {
  CHECK(NoiseSpec(0.0).amplitude_scale() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(NoiseSpec(20.0).amplitude_scale() == doctest::Approx(std::sqrt(200.0)).epsilon(1e-12));
  CHECK(NoiseSpec(3.0, 0.5).amplitude_scale() ==
        doctest::Approx(std::sqrt(2 * 0.25 * std::pow(10.0, 0.3))).epsilon(1e-12));
}

TEST_CASE("normalize_power") {
  const std::vector<cplx> two(8, cplx(2, 0));
  for (const auto& v : normalize_power(two)) CHECK(std::abs(v - cplx(1, 0)) < 1e-12);

  std::vector<cplx> tone(64);
  for (std::size_t n = 0; n < tone.size(); ++n) tone[n] = std::polar(1.0, 0.3 * static_cast<double>(n));
  const auto same = normalize_power(tone);
  for (std::size_t n = 0; n < tone.size(); ++n) CHECK(std::abs(same[n] - tone[n]) < 1e-9);

  CounterRng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> x(1 + rng.index(300));
    for (auto& v : x) v = cplx(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const auto y = normalize_power(x);
    CHECK(oracle::mean_power(y) == doctest::Approx(1.0).epsilon(1e-9));
    // Output is a positive scalar multiple of the input.
    const double k = std::abs(y[0]) / std::abs(x[0]);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(y[i] - k * x[i]) < 1e-9);
  }
  const std::vector<cplx> zeros(5);
  CHECK_THROWS_AS(normalize_power(zeros), std::invalid_argument);
  CHECK_THROWS_AS(normalize_power(std::vector<cplx>{}), std::invalid_argument);
}

TEST_CASE("apply_snr adds scaled signal and per-sample Box-Muller noise") {
  std::vector<cplx> x(16, cplx(1, 0));
  CounterRng rng(5), replay(5);
  const NoiseSpec spec(10.0);
  const auto y = apply_snr(x, spec, rng);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const auto p = replay.normal_pair();
    CHECK(y[n] == cplx(spec.amplitude_scale() + p.first, p.second));
  }
  const std::vector<cplx> bad(16, cplx(1.01, 0));
  CHECK_THROWS_AS(apply_snr(bad, spec, rng), std::invalid_argument);
}

TEST_CASE("empirical SNR of 1e5 realizations at 6 dB") {
  std::vector<cplx> tone(kSignalLength);
  for (std::size_t n = 0; n < tone.size(); ++n) tone[n] = std::polar(1.0, 0.1 * static_cast<double>(n));
  const NoiseSpec spec(6.0);
  CounterRng rng(6006);
  double noise_power = 0.0;
  std::size_t count = 0;
  const double A = spec.amplitude_scale();
  for (int r = 0; r < 100; ++r) {
    const auto y = apply_snr(tone, spec, rng);
    for (std::size_t n = 0; n < y.size(); ++n) {
      noise_power += std::norm(y[n] - A * tone[n]);
      ++count;
    }
  }
  const double snr = 10 * std::log10(A * A / (noise_power / static_cast<double>(count)));
  CHECK(std::abs(snr - 6.0) < 0.1);
}

TEST_CASE("resample_to_length") {
  CounterRng rng(1);
  std::vector<cplx> x(1024);
  for (auto& v : x) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  const auto same = resample_to_length(x, 1024);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(same[i] - x[i]) < 1e-9);

  const std::vector<cplx> dc(512, cplx(0.25, -0.5));
  const auto up = resample_to_length(dc, 1024);
  REQUIRE(up.size() == 1024);
  for (const auto& v : up) CHECK(std::abs(v - cplx(0.25, -0.5)) < 1e-12);

  std::vector<cplx> tone(512);
  for (std::size_t n = 0; n < tone.size(); ++n) tone[n] = std::polar(1.0, 2 * std::numbers::pi * 0.1 * static_cast<double>(n));
  const auto stretched = resample_to_length(tone, 1024);
  CHECK(oracle::dft_peak_frequency(stretched) == doctest::Approx(0.05).epsilon(1e-3));

  for (std::size_t n : {2u, 3u, 37u, 1000u, 2048u}) CHECK(resample_to_length(x, n).size() == n);
  CHECK_THROWS_AS(resample_to_length(x, 1), std::invalid_argument);
}

TEST_CASE("FFT wrapper matches the direct DFT") {
  CounterRng rng(3);
  std::vector<cplx> x(45);
  for (auto& v : x) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  const auto fast = dft(x, false);
  const auto slow = oracle::dft(x);
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(fast[k] - slow[k]) < 1e-9);
}

TEST_CASE("autocorrelation") {
  std::vector<cplx> impulse(16);
  impulse[0] = 1;
  const auto ri = autocorrelation_raw(impulse);
  CHECK(std::abs(ri[0] - cplx(1, 0)) < 1e-12);
  for (std::size_t k = 1; k < ri.size(); ++k) CHECK(std::abs(ri[k]) < 1e-12);
  // Unit mean power over 16 lags puts sqrt(16) at lag 0.
  const auto rn = autocorrelation(impulse);
  CHECK(std::abs(rn[0] - cplx(4, 0)) < 1e-12);

  const std::vector<cplx> barker13{1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1};
  const auto rb = autocorrelation_raw(barker13);
  CHECK(std::abs(rb[0]) == doctest::Approx(13.0));
  for (std::size_t k = 1; k < rb.size(); ++k) CHECK(std::abs(rb[k]) <= 1.0 + 1e-9);

  CounterRng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> x(1 + rng.index(200));
    for (auto& v : x) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const auto fast = autocorrelation_raw(x);
    const auto slow = oracle::aperiodic_autocorr(x);
    for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(fast[k] - slow[k]) < 1e-9);
    CHECK(oracle::mean_power(autocorrelation(x)) == doctest::Approx(1.0).epsilon(1e-9));
  }

  const std::vector<cplx> zeros(8);
  for (const auto& v : autocorrelation_raw(zeros)) CHECK(v == cplx(0, 0));
  CHECK_THROWS(autocorrelation(zeros));
}

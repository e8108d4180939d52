#include "drad/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "drad/fft.hpp"

namespace drad {

NoiseSpec::NoiseSpec(double snr_db, double sigma) : snr_db_(snr_db), sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("noise sigma must be positive");
  }
  if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db must be finite");
  amplitude_ = std::sqrt(2.0 * sigma * sigma * std::pow(10.0, snr_db / 10.0));
}

double mean_power(std::span<const cplx> x) noexcept {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return acc / static_cast<double>(x.size());
}

std::vector<cplx> normalize_power(std::span<const cplx> x) {
  if (x.empty()) throw std::invalid_argument("cannot normalize an empty signal");
  const double p = mean_power(x);
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("cannot normalize a signal with zero power");
  }
  const double scale = 1.0 / std::sqrt(p);
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * scale;
  return out;
}

std::vector<cplx> apply_snr(std::span<const cplx> x_norm, const NoiseSpec& noise, CounterRng& rng) {
  const double p = mean_power(x_norm);
  if (std::abs(p - 1.0) > 1e-6) {
    throw std::invalid_argument("apply_snr expects a unit-power signal (mean power " +
                                std::to_string(p) + ")");
  }
  const double a = noise.amplitude_scale();
  const double s = noise.sigma();
  std::vector<cplx> out(x_norm.size());
  for (std::size_t i = 0; i < x_norm.size(); ++i) {
    const auto z = rng.normal_pair();
    out[i] = a * x_norm[i] + cplx(s * z.first, s * z.second);
  }
  return out;
}

std::vector<cplx> complex_gaussian_noise(std::size_t n, double sigma, CounterRng& rng) {
  std::vector<cplx> out(n);
  for (auto& v : out) {
    const auto z = rng.normal_pair();
    v = cplx(sigma * z.first, sigma * z.second);
  }
  return out;
}

std::vector<cplx> resample_to_length(std::span<const cplx> x, std::size_t n_target) {
  if (n_target < 2) throw std::invalid_argument("resample target length must be >= 2");
  if (x.size() < 2) throw std::invalid_argument("resample input length must be >= 2");
  const std::size_t n = x.size();
  if (n == n_target) return {x.begin(), x.end()};

  const auto spec = dft(x);
  std::vector<cplx> out_spec(n_target, cplx{});
  const std::size_t common = std::min(n, n_target);
  const std::size_t half = (common - 1) / 2;  // strictly positive/negative bins kept
  out_spec[0] = spec[0];
  for (std::size_t k = 1; k <= half; ++k) {
    out_spec[k] = spec[k];
    out_spec[n_target - k] = spec[n - k];
  }
  if (common % 2 == 0) {
    const std::size_t nyq = common / 2;
    if (n > n_target) {
      // Output Nyquist bin collects both input bins at +-nyq.
      out_spec[nyq] = spec[nyq] + spec[n - nyq];
    } else {
      // Input Nyquist bin is split evenly between +-nyq.
      out_spec[nyq] = 0.5 * spec[nyq];
      out_spec[n_target - nyq] = 0.5 * spec[nyq];
    }
  }
  auto out = dft(out_spec, /*inverse=*/true);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<cplx> autocorrelation_raw(std::span<const cplx> x) {
  if (x.empty()) throw std::invalid_argument("autocorrelation of an empty signal");
  const std::size_t n = x.size();
  std::size_t padded = 1;
  while (padded < 2 * n) padded <<= 1;
  std::vector<cplx> buf(padded, cplx{});
  std::copy(x.begin(), x.end(), buf.begin());
  auto spec = dft(buf);
  for (auto& v : spec) v = cplx(std::norm(v), 0.0);
  auto corr = dft(spec, /*inverse=*/true);
  std::vector<cplx> out(n);
  const double scale = 1.0 / static_cast<double>(padded);
  for (std::size_t k = 0; k < n; ++k) out[k] = corr[k] * scale;
  return out;
}

std::vector<cplx> autocorrelation(std::span<const cplx> x) {
  return normalize_power(autocorrelation_raw(x));
}

}  // namespace drad

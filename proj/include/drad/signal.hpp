#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "drad/rng.hpp"

namespace drad {

using cplx = std::complex<double>;

inline constexpr double kRadarSampleRateHz = 100e6;
inline constexpr std::size_t kSignalLength = 1024;

/// Complex baseband sequence of fixed length.
struct IQSignal {
  std::vector<cplx> samples;
  double sample_rate_hz = kRadarSampleRateHz;

  std::size_t length() const noexcept { return samples.size(); }
};

/// CAWN parameters: per-component standard deviation and the SNR it realises
/// together with the amplitude scale A = sqrt(2 sigma^2 10^(snr_db / 10)).
class NoiseSpec {
 public:
  explicit NoiseSpec(double snr_db, double sigma = 1.0);

  double snr_db() const noexcept { return snr_db_; }
  double sigma() const noexcept { return sigma_; }
  double amplitude_scale() const noexcept { return amplitude_; }

 private:
  double snr_db_;
  double sigma_;
  double amplitude_;
};

/// Average of |x[n]|^2.
double mean_power(std::span<const cplx> x) noexcept;

/// Scales `x` to unit mean power. Throws std::invalid_argument for empty or
/// all-zero input.
std::vector<cplx> normalize_power(std::span<const cplx> x);

/// A * x_norm[n] + (sigma * N(0,1), sigma * N(0,1)). Sample n consumes the
/// n-th Box-Muller pair of `rng`. `x_norm` must have unit power within 1e-6.
std::vector<cplx> apply_snr(std::span<const cplx> x_norm, const NoiseSpec& noise, CounterRng& rng);

/// Complex white Gaussian noise with per-component standard deviation sigma.
std::vector<cplx> complex_gaussian_noise(std::size_t n, double sigma, CounterRng& rng);

/// Band-limited resampling by zero-padding or truncating the DFT. Length
/// changes only rescale the time axis; DC is preserved exactly.
std::vector<cplx> resample_to_length(std::span<const cplx> x, std::size_t n_target);

/// Aperiodic autocorrelation R[k] = sum_n x[n] conj(x[n-k]), k = 0..len-1,
/// computed through a zero-padded DFT.
std::vector<cplx> autocorrelation_raw(std::span<const cplx> x);

/// autocorrelation_raw renormalised to unit power, ready for the classifier
/// input. Throws for all-zero input.
std::vector<cplx> autocorrelation(std::span<const cplx> x);

}  // namespace drad

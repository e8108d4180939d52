#pragma once

#include <complex>
#include <span>
#include <vector>

namespace drad {

/// Unnormalized DFT of arbitrary length: X[k] = sum_n x[n] e^{-+ j 2 pi k n / N}
/// (minus sign forward, plus sign inverse). Backed by FFTW; safe to call from
/// several threads.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x, bool inverse = false);

}  // namespace drad

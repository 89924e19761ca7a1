#pragma once

#include <complex>
#include <vector>

namespace bchardy {

// Thin wrappers around FFTW's 1d complex transforms. Plans are created with
// FFTW_ESTIMATE (deterministic) behind a mutex; execution is thread safe.

// Unnormalized forward DFT: X[k] = sum_n x[n] exp(-2*pi*i*k*n/N).
void fft_forward(std::vector<std::complex<double>>& data);

// Unnormalized inverse DFT (no 1/N factor).
void fft_inverse(std::vector<std::complex<double>>& data);

// Fourier coefficients c_n = (1/N) X[n] with n indexed mod N.
std::vector<std::complex<double>> fourier_coefficients(const std::vector<std::complex<double>>& samples);

// Rebuild samples from coefficients produced by fourier_coefficients.
std::vector<std::complex<double>> fourier_synthesis(const std::vector<std::complex<double>>& coeffs);

}  // namespace bchardy

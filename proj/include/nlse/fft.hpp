#pragma once

#include <complex>
#include <vector>

namespace nlse {

/// In-place radix-2 FFT, data.size() a power of two.
/// Forward: X_k = sum_p x_p exp(-2*pi*i*k*p/K).  Inverse divides by K.
/// Hand-rolled (rather than FFTW) so it can run freely inside OpenMP
/// regions; every transform in this project has power-of-two length.
void fft(std::vector<std::complex<double>>& data, bool inverse);

inline void fft_forward(std::vector<std::complex<double>>& data) { fft(data, false); }
inline void fft_inverse(std::vector<std::complex<double>>& data) { fft(data, true); }

}  // namespace nlse

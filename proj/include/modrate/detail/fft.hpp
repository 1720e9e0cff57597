#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace modrate::detail {

// Thin wrappers over FFTW. Transforms are unnormalized; sign -1 is the forward
// transform sum_j x_j exp(-2 pi i j k / n), sign +1 the backward one.
void fft(std::vector<std::complex<double>>& data, int sign);

// Row-major rows x cols two-dimensional transform.
void fft2(std::vector<std::complex<double>>& data, std::size_t rows, std::size_t cols, int sign);

// Type-I discrete cosine transform (FFTW REDFT00), unnormalized:
// y_k = x_0 + (-1)^k x_{n-1} + 2 sum_{j=1}^{n-2} x_j cos(pi j k / (n-1)).
std::vector<double> dct1(const std::vector<double>& x);

}  // namespace modrate::detail

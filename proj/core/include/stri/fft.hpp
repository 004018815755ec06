#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace stri::fft {

// In-place complex DFT, unnormalized.  sign = -1 is the forward transform
// (e^{-2pi i}), sign = +1 the backward one.  Plans are cached per thread and
// created with FFTW_ESTIMATE so results are reproducible across runs.
void transform(const std::vector<int>& dims, std::complex<double>* data, int sign);

inline void forward(const std::vector<int>& dims, std::complex<double>* data) {
    transform(dims, data, -1);
}
inline void backward(const std::vector<int>& dims, std::complex<double>* data) {
    transform(dims, data, +1);
}

// Smallest 2^a 3^b 5^c >= n.  FFTW is O(n log n) for these sizes.
std::int64_t next_smooth(std::int64_t n);

}  // namespace stri::fft

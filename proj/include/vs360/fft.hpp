#pragma once

#include <complex>
#include <cstddef>

namespace vs360::fft {

// Row-major 2D complex transforms backed by FFTW. Plans are cached per
// (width, height, direction) and reused; calls are thread safe. The inverse
// transform is unnormalized (FFTW convention): inverse(forward(x)) == x * w*h.
void forward_2d(int width, int height, const std::complex<double>* in,
                std::complex<double>* out);
void inverse_2d(int width, int height, const std::complex<double>* in,
                std::complex<double>* out);

}  // namespace vs360::fft

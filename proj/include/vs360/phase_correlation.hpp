#pragma once

#include "vs360/image.hpp"

namespace vs360 {

// Peak of the inverse-transformed, unit-normalized cross-power spectrum.
// shift is the integer circular displacement of `b` relative to `a` (b moved
// right/down by +shift), folded into [-dim/2, dim/2]. peak_response is the
// correlation peak rescaled so that a self-match scores exactly 1.0; it
// always lies in [0, 1].
struct PhaseCorrelationResult {
    int shift_x = 0;
    int shift_y = 0;
    double peak_response = 0.0;
};

// Both images must be grayscale with equal dimensions, at least 8x8. Inputs
// are mean-subtracted and Hann-windowed before the transform. A pair of
// constant images yields shift (0,0) with response 1.0 when the constants
// match and 0.0 otherwise.
PhaseCorrelationResult phase_correlate(const Image8& a, const Image8& b);

}  // namespace vs360

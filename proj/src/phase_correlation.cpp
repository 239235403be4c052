#include "vs360/phase_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "vs360/fft.hpp"
#include "vs360/geometry.hpp"
#include "vs360/kernels.hpp"

namespace vs360 {
namespace {

std::vector<double> hann(int n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    for (int i = 0; i < n; ++i) w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * i / (n - 1)));
    return w;
}

// mean-subtract, apply separable Hann, widen to complex
std::vector<std::complex<double>> prepare(const Image8& img) {
    const auto& k = kernels::active();
    const std::size_t n = img.pixel_count();
    std::vector<double> vals(n);
    k.u8_to_f64(img.data.data(), n, vals.data());
    const double mean = k.sum_f64(vals.data(), n) / static_cast<double>(n);

    const std::vector<double> wx = hann(img.width);
    const std::vector<double> wy = hann(img.height);
    std::vector<double> window(n);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            window[static_cast<std::size_t>(y) * img.width + x] = wx[x] * wy[y];

    std::vector<double> tapered(n);
    k.sub_scale_f64(vals.data(), mean, window.data(), tapered.data(), n);

    std::vector<std::complex<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = tapered[i];
    return out;
}

}  // namespace

PhaseCorrelationResult phase_correlate(const Image8& a, const Image8& b) {
    if (a.channels != 1 || b.channels != 1)
        throw std::invalid_argument("phase_correlate: grayscale input required");
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("phase_correlate: dimension mismatch " +
                                    std::to_string(a.width) + "x" + std::to_string(a.height) +
                                    " vs " + std::to_string(b.width) + "x" +
                                    std::to_string(b.height));
    if (a.width < 8 || a.height < 8)
        throw std::invalid_argument("phase_correlate: images must be at least 8x8");

    const bool a_const = is_constant(a), b_const = is_constant(b);
    if (a_const && b_const) {
        PhaseCorrelationResult r;
        r.peak_response = (a.data[0] == b.data[0]) ? 1.0 : 0.0;
        return r;
    }

    const int w = a.width, h = a.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::vector<std::complex<double>> fa(n), fb(n);
    {
        const auto ta = prepare(a);
        fft::forward_2d(w, h, ta.data(), fa.data());
        const auto tb = prepare(b);
        fft::forward_2d(w, h, tb.data(), fb.data());
    }

    // cross-power spectrum conj(A)*B, normalized to unit magnitude per bin;
    // bins with negligible energy are dropped and excluded from the
    // self-match normalizer.
    double mag_sum = 0.0;
    std::vector<std::complex<double>> cross(n);
    for (std::size_t i = 0; i < n; ++i) {
        cross[i] = std::conj(fa[i]) * fb[i];
        mag_sum += std::abs(cross[i]);
    }
    const double threshold = 1e-12 * (mag_sum / static_cast<double>(n));
    std::size_t live_bins = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = std::abs(cross[i]);
        if (mag > threshold && mag > 0.0) {
            cross[i] /= mag;
            ++live_bins;
        } else {
            cross[i] = 0.0;
        }
    }
    if (live_bins == 0) return {0, 0, 0.0};

    std::vector<std::complex<double>> surface(n);
    fft::inverse_2d(w, h, cross.data(), surface.data());

    std::vector<double> real(n);
    for (std::size_t i = 0; i < n; ++i) real[i] = surface[i].real();
    const std::size_t peak = kernels::active().argmax_f64(real.data(), n);

    const int px = static_cast<int>(peak % static_cast<std::size_t>(w));
    const int py = static_cast<int>(peak / static_cast<std::size_t>(w));
    PhaseCorrelationResult r;
    r.shift_x = px <= w / 2 ? px : px - w;
    r.shift_y = py <= h / 2 ? py : py - h;
    r.peak_response =
        std::clamp(real[peak] / static_cast<double>(live_bins), 0.0, 1.0);
    return r;
}

}  // namespace vs360

#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "vs360/fft.hpp"
#include "vs360/geometry.hpp"

using namespace vs360;
using cd = std::complex<double>;

namespace {

// O(n^2) direct DFT; the independent check for the FFT path.
std::vector<cd> dft_2d(int w, int h, const std::vector<cd>& in, int sign) {
    std::vector<cd> out(in.size());
    for (int ky = 0; ky < h; ++ky)
        for (int kx = 0; kx < w; ++kx) {
            cd acc = 0.0;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const double phase =
                        sign * 2.0 * kPi *
                        (static_cast<double>(kx) * x / w + static_cast<double>(ky) * y / h);
                    acc += in[static_cast<std::size_t>(y) * w + x] *
                           cd(std::cos(phase), std::sin(phase));
                }
            out[static_cast<std::size_t>(ky) * w + kx] = acc;
        }
    return out;
}

}  // namespace

TEST_CASE("forward/inverse transforms match a direct DFT") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (auto [w, h] : {std::pair{8, 4}, {5, 7}, {16, 3}}) {
        std::vector<cd> in(static_cast<std::size_t>(w) * h);
        for (auto& v : in) v = cd(d(rng), d(rng));

        std::vector<cd> fwd(in.size()), inv(in.size());
        fft::forward_2d(w, h, in.data(), fwd.data());
        const auto want_fwd = dft_2d(w, h, in, -1);
        for (std::size_t i = 0; i < in.size(); ++i) {
            CHECK(fwd[i].real() == doctest::Approx(want_fwd[i].real()).epsilon(1e-9));
            CHECK(fwd[i].imag() == doctest::Approx(want_fwd[i].imag()).epsilon(1e-9));
        }

        fft::inverse_2d(w, h, fwd.data(), inv.data());
        const double scale = static_cast<double>(w) * h;
        for (std::size_t i = 0; i < in.size(); ++i) {
            CHECK(inv[i].real() / scale == doctest::Approx(in[i].real()).epsilon(1e-9));
            CHECK(inv[i].imag() / scale == doctest::Approx(in[i].imag()).epsilon(1e-9));
        }
    }
}

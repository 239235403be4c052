#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "vs360/phase_correlation.hpp"

using namespace vs360;

namespace {

// Band-limited random texture: smooth enough for windowed correlation,
// busy enough to pin shifts unambiguously.
Image8 textured(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.2, 1.0), phase(0.0, 6.28318), freq(1.0, 6.0);
    struct Wave {
        double fx, fy, ph, a;
    };
    std::vector<Wave> waves(12);
    for (auto& wv : waves) wv = {freq(rng), freq(rng), phase(rng), amp(rng)};
    Image8 img(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double v = 0.0;
            for (const auto& wv : waves)
                v += wv.a * std::sin(2 * 3.14159265358979 *
                                         (wv.fx * x / w + wv.fy * y / h) +
                                     wv.ph);
            img.at(x, y) = static_cast<std::uint8_t>(128 + std::clamp(v * 28.0, -127.0, 127.0));
        }
    return img;
}

Image8 circular_shift(const Image8& src, int sx, int sy) {
    Image8 out(src.width, src.height, 1);
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x)
            out.at((x + sx + src.width) % src.width, (y + sy + src.height) % src.height) =
                src.at(x, y);
    return out;
}

}  // namespace

TEST_CASE("self-match peaks above 0.99 at zero shift") {
    const auto img = textured(64, 64, 1);
    const auto r = phase_correlate(img, img);
    CHECK(r.shift_x == 0);
    CHECK(r.shift_y == 0);
    CHECK(r.peak_response > 0.99);
}

TEST_CASE("recovers a constructed circular shift exactly") {
    const auto a = textured(64, 64, 2);
    const auto b = circular_shift(a, 5, 3);
    const auto r = phase_correlate(a, b);
    CHECK(r.shift_x == 5);
    CHECK(r.shift_y == 3);
    CHECK(r.peak_response > 0.5);

    const auto r_neg = phase_correlate(a, circular_shift(a, -7, -2));
    CHECK(r_neg.shift_x == -7);
    CHECK(r_neg.shift_y == -2);
}

TEST_CASE("independent noise rarely exceeds response 0.2") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> d(0, 255);
    int high = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Image8 a(64, 64, 1), b(64, 64, 1);
        for (auto& v : a.data) v = static_cast<std::uint8_t>(d(rng));
        for (auto& v : b.data) v = static_cast<std::uint8_t>(d(rng));
        if (phase_correlate(a, b).peak_response >= 0.2) ++high;
    }
    CHECK(high <= 1);
}

TEST_CASE("constant images have the defined degenerate result") {
    Image8 a(16, 16, 1, 40), b(16, 16, 1, 40), c(16, 16, 1, 90);
    auto same = phase_correlate(a, b);
    CHECK(same.shift_x == 0);
    CHECK(same.shift_y == 0);
    CHECK(same.peak_response == 1.0);

    auto diff = phase_correlate(a, c);
    CHECK(diff.peak_response == 0.0);

    // one constant, one textured: no common structure
    const auto t = textured(16, 16, 3);
    CHECK(phase_correlate(a, t).peak_response < 0.2);
}

TEST_CASE("argument errors") {
    Image8 a(16, 16, 1, 0), b(16, 8, 1, 0), small(4, 4, 1, 0);
    CHECK_THROWS_AS(phase_correlate(a, b), std::invalid_argument);
    CHECK_THROWS_AS(phase_correlate(small, small), std::invalid_argument);
    Image8 rgb(16, 16, 3, 0);
    CHECK_THROWS_AS(phase_correlate(rgb, rgb), std::invalid_argument);
}

TEST_CASE("response is invariant to uniform brightness scaling") {
    auto a = textured(32, 32, 4);
    for (auto& v : a.data) v &= 0xFE;  // even values so halving is an exact scale
    const auto b = circular_shift(a, 3, 1);
    Image8 a2 = a, b2 = b;
    for (auto& v : a2.data) v = static_cast<std::uint8_t>(v / 2);
    for (auto& v : b2.data) v = static_cast<std::uint8_t>(v / 2);
    const auto r1 = phase_correlate(a, b);
    const auto r2 = phase_correlate(a2, b2);
    CHECK(r1.shift_x == r2.shift_x);
    CHECK(r1.shift_y == r2.shift_y);
    CHECK(r1.peak_response == doctest::Approx(r2.peak_response).epsilon(1e-9));
}

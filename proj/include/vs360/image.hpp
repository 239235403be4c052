#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vs360 {

// Row-major, interleaved 8-bit image. channels is 1 (gray) or 3 (RGB).
struct Image8 {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> data;

    Image8() = default;
    Image8(int w, int h, int ch, std::uint8_t fill = 0)
        : width(w), height(h), channels(ch),
          data(static_cast<std::size_t>(w) * h * ch, fill) {
        if (w <= 0 || h <= 0 || (ch != 1 && ch != 3))
            throw std::invalid_argument("Image8: bad dimensions " + std::to_string(w) + "x" +
                                        std::to_string(h) + "x" + std::to_string(ch));
    }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool empty() const { return data.empty(); }

    std::uint8_t& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    bool same_shape(const Image8& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

// Row-major double-precision scalar field; used for FFT staging and
// correlation surfaces.
struct ImageF64 {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    ImageF64() = default;
    ImageF64(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

// Grayscale copy of an image; 3-channel input goes through the fixed-point
// BT.601 kernel, 1-channel input is passed through unchanged.
Image8 to_gray(const Image8& img);

// True if every sample has the same value.
bool is_constant(const Image8& img);

}  // namespace vs360

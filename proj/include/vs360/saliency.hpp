#pragma once

#include <filesystem>
#include <vector>

#include "vs360/image.hpp"

namespace vs360 {

// Per-frame scalar saliency grid, stored as 8-bit intensities (thresholds
// like t1 are specified on the 0-255 scale) with a normalized accessor.
struct SaliencyMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    SaliencyMap() = default;
    SaliencyMap(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    static SaliencyMap from_gray(const Image8& img);

    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double normalized_at(int x, int y) const { return at(x, y) / 255.0; }
    std::size_t size() const { return data.size(); }
};

enum class SaliencySource { External, Fallback };

// Maps indexed 0..N-1, one per analyzed frame.
struct SaliencySequence {
    std::vector<SaliencyMap> maps;
    SaliencySource source = SaliencySource::External;
};

// Loads %06d.png (grayscale, zero-based) from a directory. A missing index
// or a map whose dimensions differ from expected_w x expected_h is an error
// naming the offender.
SaliencySequence load_saliency_sequence(const std::filesystem::path& directory,
                                        std::size_t expected_count, int expected_w,
                                        int expected_h);

void save_saliency_sequence(const std::filesystem::path& directory, const SaliencySequence& seq);

// Classical spectral-residual saliency of a single frame; deterministic,
// output dimensions equal the input's, min-max normalized to 0..255. The
// built-in fallback when no external saliency maps are supplied. Frames
// must be at least 16x16.
SaliencyMap spectral_residual_saliency(const Image8& frame);

// Pearson correlation of the two grids as flat vectors. Throws when both
// maps are constant (undefined); one constant map gives 0 by the
// zero-covariance convention.
double pearson_cc(const SaliencyMap& pred, const SaliencyMap& gt);

// Histogram-intersection similarity of the sum-normalized maps, in [0, 1].
// Throws when either map sums to zero.
double sim_metric(const SaliencyMap& pred, const SaliencyMap& gt);

}  // namespace vs360

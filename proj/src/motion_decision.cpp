#include "vs360/motion_decision.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace vs360 {

PolarBands extract_polar_bands(const Image8& frame, double band_fraction) {
    if (!(band_fraction > 0.0 && band_fraction < 0.5))
        throw std::invalid_argument("band_fraction must lie in (0, 0.5)");
    const int band_h = static_cast<int>(std::lround(band_fraction * frame.height));
    if (band_h < 8)
        throw std::invalid_argument("polar band too thin: " + std::to_string(band_h) +
                                    " rows (need >= 8)");

    const Image8 gray = to_gray(frame);
    PolarBands out;
    out.band_h = band_h;
    out.north = Image8(gray.width, band_h, 1);
    out.south = Image8(gray.width, band_h, 1);
    const std::size_t stride = static_cast<std::size_t>(gray.width);
    std::memcpy(out.north.data.data(), gray.data.data(), stride * band_h);
    std::memcpy(out.south.data.data(),
                gray.data.data() + stride * static_cast<std::size_t>(gray.height - band_h),
                stride * band_h);
    return out;
}

double motion_score(const PhaseCorrelationResult& r) {
    return std::clamp(1.0 - r.peak_response, 0.0, 1.0);
}

namespace {

double band_pair_score(const Image8& prev, const Image8& cur) {
    // Featureless poles (uniform sky/floor) carry no motion evidence.
    if (is_constant(prev) && is_constant(cur)) return 0.0;
    return motion_score(phase_correlate(prev, cur));
}

}  // namespace

CameraMotionDecision classify_camera(std::span<const Image8> frames,
                                     const DecisionParams& params) {
    if (params.stride < 1) throw std::invalid_argument("decision stride must be >= 1");

    std::vector<std::size_t> sampled;
    for (std::size_t i = 0; i < frames.size(); i += static_cast<std::size_t>(params.stride))
        sampled.push_back(i);
    if (sampled.size() < 2)
        throw std::invalid_argument("classify_camera: need at least 2 sampled frames, got " +
                                    std::to_string(sampled.size()));

    CameraMotionDecision decision;
    PolarBands prev = extract_polar_bands(frames[sampled[0]], params.band_fraction);
    std::size_t exceed = 0;
    for (std::size_t k = 1; k < sampled.size(); ++k) {
        PolarBands cur = extract_polar_bands(frames[sampled[k]], params.band_fraction);
        const double score = std::max(band_pair_score(prev.north, cur.north),
                                      band_pair_score(prev.south, cur.south));
        decision.pair_scores.push_back(score);
        if (score > params.t0) ++exceed;
        prev = std::move(cur);
    }
    decision.exceed_fraction =
        static_cast<double>(exceed) / static_cast<double>(decision.pair_scores.size());
    decision.label = decision.exceed_fraction > params.majority_fraction ? CameraLabel::Moving
                                                                         : CameraLabel::Static;
    return decision;
}

}  // namespace vs360

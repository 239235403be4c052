#pragma once

#include <span>
#include <vector>

#include "vs360/image.hpp"
#include "vs360/phase_correlation.hpp"

namespace vs360 {

// Grayscale strips cut from the top and bottom of an ERP frame. The polar
// regions stay still for a fixed camera, so their inter-frame correlation
// carries the static/moving signal.
struct PolarBands {
    Image8 north;
    Image8 south;
    int band_h = 0;
};

// band_fraction in (0, 0.5); the resulting band must be at least 8 rows.
PolarBands extract_polar_bands(const Image8& frame, double band_fraction);

// 1 - peak_response: 0 for identical bands, 1 for fully decorrelated ones.
double motion_score(const PhaseCorrelationResult& r);

enum class CameraLabel { Static, Moving };

struct CameraMotionDecision {
    CameraLabel label = CameraLabel::Static;
    std::vector<double> pair_scores;  // one per consecutive sampled pair
    double exceed_fraction = 0.0;     // fraction of pairs with score > t0
};

struct DecisionParams {
    double t0 = 0.5;                // per-pair motion threshold
    double majority_fraction = 0.5; // label Moving when exceeded
    double band_fraction = 0.15;
    int stride = 1;                 // sampling stride over the input frames
};

// Scores every consecutive sampled pair with the larger of the north/south
// band motion scores; a pair of constant bands contributes 0 (a featureless
// pole is no evidence of motion). Needs at least two sampled frames.
CameraMotionDecision classify_camera(std::span<const Image8> frames, const DecisionParams& params);

}  // namespace vs360

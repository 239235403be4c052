#pragma once

#include <functional>
#include <vector>

#include "vs360/geometry.hpp"
#include "vs360/subvolumes.hpp"

namespace vs360 {

// Moving average of the track directions over an odd window (unit-vector
// mean, renormalized; truncated at the ends). window == 1 is the identity.
std::vector<SphericalPoint> smooth_track(const std::vector<SphericalPoint>& centroids,
                                         int window);

struct RenderParams {
    double fov_h_deg = 90.0;
    double fov_v_deg = 90.0;
    int out_w = 512;
    int out_h = 512;
    int smooth_window = 5;
};

// The NFOV clip rendered from one sub-volume.
struct Fragment2D {
    int id = 0;
    int subvolume_id = 0;
    int start_frame = 0;                   // first source frame index
    std::vector<int> source_frames;        // one per rendered frame
    std::vector<SphericalPoint> centers;   // smoothed camera directions
    std::vector<Image8> frames;
    double fov_h_deg = 0.0;
    double fov_v_deg = 0.0;
};

// Resolves a source frame by index; null means unresolvable.
using FrameProvider = std::function<const Image8*(int)>;

// F4: render every frame of the sub-volume as a gnomonic crop centered on
// the smoothed track.
Fragment2D render_fragment(const SubVolume& sv, const FrameProvider& frames,
                           const RenderParams& params);

// Fragments stitched in chronological order with their offsets in the
// concatenated frame stream.
struct Video2D {
    std::vector<Fragment2D> fragments;
    std::vector<int> boundaries;  // start offset per fragment
    int total_frames = 0;
    double fps = 2.0;
};

Video2D stitch(std::vector<Fragment2D> fragments, double fps);

}  // namespace vs360

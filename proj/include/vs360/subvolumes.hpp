#pragma once

#include <map>
#include <vector>

#include "vs360/regions.hpp"

namespace vs360 {

struct TrackEntry {
    double erp_x = 0.0;
    double erp_y = 0.0;
    SphericalPoint sph;
    bool observed = false;  // false: interpolated gap fill
};

// A spatio-temporally correlated track of salient regions. After
// finalization every frame in [start_frame, end_frame] has an entry and no
// unobserved run is longer than t4.
struct SubVolume {
    int id = 0;
    int start_frame = 0;
    int end_frame = 0;
    std::map<int, TrackEntry> track;

    int length() const { return end_frame - start_frame + 1; }
};

struct TrackerParams {
    double t3 = 100.0;       // max centroid distance, ERP pixels (wraparound-aware)
    int t4 = 100;            // max missing run, frames
    int frame_width = 0;     // ERP grid the centroids live on
    int frame_height = 0;
    int min_subvolume_len = 4;
};

// Open tracks carry their last observed centroid for matching.
struct TrackerState {
    struct Open {
        SubVolume sv;
        int last_observed = -1;
    };
    std::vector<Open> open;
    std::vector<SubVolume> closed;
    int next_id = 0;
    int last_frame = -1;
};

// F2: greedy nearest-centroid association of one frame's regions against the
// open sub-volumes (one region per sub-volume per frame, distance < t3);
// unmatched regions open new sub-volumes. Open tracks whose gap can no
// longer be filled (missing run would exceed t4) are closed first. Frames
// must arrive in strictly increasing order.
void assign_regions(TrackerState& state, int frame_index,
                    const std::vector<SalientRegion>& regions, const TrackerParams& params);

void close_all(TrackerState& state);

// F3: fills internal gaps of length <= t4 with great-circle-interpolated
// centroids (flagged unobserved) and splits at longer gaps, whose frames
// belong to no sub-volume. frame_width/height place the interpolated
// centroids back on the ERP pixel grid.
std::vector<SubVolume> fill_gaps(const SubVolume& sv, int t4, int frame_width, int frame_height);

// Full pass: fold assign_regions over the per-frame region lists (index ==
// frame), close, fill gaps, drop sub-volumes shorter than min_subvolume_len,
// sort chronologically, and re-number ids.
std::vector<SubVolume> build_subvolumes(const std::vector<std::vector<SalientRegion>>& per_frame,
                                        const TrackerParams& params);

}  // namespace vs360

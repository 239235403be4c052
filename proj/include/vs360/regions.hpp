#pragma once

#include <vector>

#include "vs360/geometry.hpp"
#include "vs360/saliency.hpp"

namespace vs360 {

// A saliency-map pixel above the intensity threshold, with its spherical
// position and cached unit vector.
struct SalientPoint {
    SphericalPoint position;
    Vec3 unit;
    int erp_px = 0;
    int erp_py = 0;
    std::uint8_t intensity = 0;
};

// One density cluster of salient points in one frame.
struct SalientRegion {
    int frame_index = 0;
    std::vector<SalientPoint> points;
    SphericalPoint centroid_sph;   // intensity-weighted 3D mean, reprojected
    double centroid_erp_x = 0.0;   // fractional pixels on the source grid
    double centroid_erp_y = 0.0;
    std::uint8_t peak_intensity = 0;
    double mean_intensity = 0.0;
};

// Pixels with intensity strictly greater than t1, in row-major order.
std::vector<SalientPoint> threshold_points(const SaliencyMap& map, std::uint8_t t1);

struct DbscanResult {
    std::vector<std::vector<int>> clusters;  // indices into the input, canonical order
    std::vector<int> noise;
};

// Classic DBSCAN under the great-circle metric (neighbors at distance
// <= eps). Input order is the canonical order: border points reachable from
// two clusters stay with the cluster discovered first, and clusters are
// sorted by their smallest member index.
DbscanResult dbscan_spherical(const std::vector<SalientPoint>& points, double eps, int min_pts);

struct RegionParams {
    std::uint8_t t1 = 150;  // intensity threshold
    double t2 = 1.2;        // DBSCAN radius, radians
    int min_pts = 5;
    int downscale = 1;      // optional saliency-map downscale before thresholding
};

// F1: threshold, cluster, and summarize one frame's saliency map. Noise
// points are dropped. frame_index is recorded on every region.
std::vector<SalientRegion> extract_regions(const SaliencyMap& map, int frame_index,
                                           const RegionParams& params);

}  // namespace vs360

#include "vs360/regions.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "vs360/kernels.hpp"

namespace vs360 {

std::vector<SalientPoint> threshold_points(const SaliencyMap& map, std::uint8_t t1) {
    std::vector<SalientPoint> points;
    points.reserve(kernels::active().count_gt_u8(map.data.data(), map.data.size(), t1));
    for (int y = 0; y < map.height; ++y)
        for (int x = 0; x < map.width; ++x) {
            const std::uint8_t v = map.at(x, y);
            if (v > t1) {
                SalientPoint p;
                p.position = erp_to_spherical(x, y, map.width, map.height);
                p.unit = to_unit_vector(p.position);
                p.erp_px = x;
                p.erp_py = y;
                p.intensity = v;
                points.push_back(p);
            }
        }
    return points;
}

DbscanResult dbscan_spherical(const std::vector<SalientPoint>& points, double eps, int min_pts) {
    if (!(eps > 0.0)) throw std::invalid_argument("dbscan: eps must be positive");
    if (min_pts < 1) throw std::invalid_argument("dbscan: min_pts must be >= 1");

    constexpr int kUndefined = -2;
    constexpr int kNoise = -1;
    const int n = static_cast<int>(points.size());
    std::vector<int> label(n, kUndefined);

    const auto neighbors_of = [&](int i) {
        std::vector<int> out;
        for (int j = 0; j < n; ++j)
            if (great_circle_distance(points[i].position, points[j].position) <= eps)
                out.push_back(j);
        return out;
    };

    int next_cluster = 0;
    for (int i = 0; i < n; ++i) {
        if (label[i] != kUndefined) continue;
        auto seeds = neighbors_of(i);
        if (static_cast<int>(seeds.size()) < min_pts) {
            label[i] = kNoise;
            continue;
        }
        const int cluster = next_cluster++;
        label[i] = cluster;
        std::deque<int> queue(seeds.begin(), seeds.end());
        while (!queue.empty()) {
            const int q = queue.front();
            queue.pop_front();
            if (label[q] == kNoise) label[q] = cluster;  // border point, first claim wins
            if (label[q] != kUndefined) continue;
            label[q] = cluster;
            const auto nq = neighbors_of(q);
            if (static_cast<int>(nq.size()) >= min_pts)
                queue.insert(queue.end(), nq.begin(), nq.end());
        }
    }

    DbscanResult result;
    result.clusters.resize(next_cluster);
    for (int i = 0; i < n; ++i) {
        if (label[i] == kNoise)
            result.noise.push_back(i);
        else
            result.clusters[label[i]].push_back(i);
    }
    // canonical order: by smallest member index (members are already sorted)
    std::sort(result.clusters.begin(), result.clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return result;
}

std::vector<SalientRegion> extract_regions(const SaliencyMap& map, int frame_index,
                                           const RegionParams& params) {
    if (params.downscale < 1) throw std::invalid_argument("region downscale must be >= 1");

    std::vector<SalientPoint> points;
    if (params.downscale == 1) {
        points = threshold_points(map, params.t1);
    } else {
        // subsample the grid; points keep source-resolution coordinates
        const int d = params.downscale;
        for (int y = 0; y < map.height; y += d)
            for (int x = 0; x < map.width; x += d) {
                const std::uint8_t v = map.at(x, y);
                if (v > params.t1) {
                    SalientPoint p;
                    p.position = erp_to_spherical(x, y, map.width, map.height);
                    p.unit = to_unit_vector(p.position);
                    p.erp_px = x;
                    p.erp_py = y;
                    p.intensity = v;
                    points.push_back(p);
                }
            }
    }

    const auto clustering = dbscan_spherical(points, params.t2, params.min_pts);

    std::vector<SalientRegion> regions;
    regions.reserve(clustering.clusters.size());
    for (const auto& member_indices : clustering.clusters) {
        SalientRegion region;
        region.frame_index = frame_index;
        region.points.reserve(member_indices.size());
        Vec3 weighted{0, 0, 0};
        double weight_sum = 0.0, intensity_sum = 0.0;
        for (int idx : member_indices) {
            const SalientPoint& p = points[idx];
            region.points.push_back(p);
            weighted = weighted + p.unit * static_cast<double>(p.intensity);
            weight_sum += p.intensity;
            intensity_sum += p.intensity;
            region.peak_intensity = std::max(region.peak_intensity, p.intensity);
        }
        // weight_sum > 0 because every member surpasses t1 >= 0
        const Vec3 mean_dir = weighted * (1.0 / weight_sum);
        region.centroid_sph = mean_dir.norm() > 1e-12
                                  ? to_spherical(mean_dir)
                                  : region.points.front().position;
        const ErpCoord pc = spherical_to_erp(region.centroid_sph, map.width, map.height);
        region.centroid_erp_x = pc.px;
        region.centroid_erp_y = pc.py;
        region.mean_intensity = intensity_sum / static_cast<double>(member_indices.size());
        regions.push_back(std::move(region));
    }
    return regions;
}

}  // namespace vs360

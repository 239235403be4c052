#include "vs360/nfov.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace vs360 {

std::vector<SphericalPoint> smooth_track(const std::vector<SphericalPoint>& centroids,
                                         int window) {
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("smooth_track: window must be odd and >= 1");
    if (window == 1 || centroids.size() <= 1) return centroids;

    const int n = static_cast<int>(centroids.size());
    const int half = window / 2;
    std::vector<Vec3> units(centroids.size());
    for (int i = 0; i < n; ++i) units[i] = to_unit_vector(centroids[i]);

    std::vector<SphericalPoint> out(centroids.size());
    for (int i = 0; i < n; ++i) {
        Vec3 acc{0, 0, 0};
        const int lo = std::max(0, i - half), hi = std::min(n - 1, i + half);
        for (int j = lo; j <= hi; ++j) acc = acc + units[j];
        out[i] = acc.norm() > 1e-12 ? to_spherical(acc) : centroids[i];
    }
    return out;
}

Fragment2D render_fragment(const SubVolume& sv, const FrameProvider& frames,
                           const RenderParams& params) {
    Fragment2D frag;
    frag.subvolume_id = sv.id;
    frag.start_frame = sv.start_frame;
    frag.fov_h_deg = params.fov_h_deg;
    frag.fov_v_deg = params.fov_v_deg;

    std::vector<SphericalPoint> raw;
    raw.reserve(sv.track.size());
    for (int f = sv.start_frame; f <= sv.end_frame; ++f) {
        const auto it = sv.track.find(f);
        if (it == sv.track.end())
            throw std::logic_error("render_fragment: sub-volume " + std::to_string(sv.id) +
                                   " has no track entry for frame " + std::to_string(f));
        raw.push_back(it->second.sph);
        frag.source_frames.push_back(f);
    }
    frag.centers = smooth_track(raw, params.smooth_window);

    frag.frames.reserve(frag.centers.size());
    for (std::size_t i = 0; i < frag.centers.size(); ++i) {
        const int frame_index = frag.source_frames[i];
        const Image8* source = frames(frame_index);
        if (!source)
            throw std::runtime_error("render_fragment: no source frame for index " +
                                     std::to_string(frame_index));
        frag.frames.push_back(gnomonic_project(*source, frag.centers[i], params.fov_h_deg,
                                               params.fov_v_deg, params.out_w, params.out_h)
                                  .image);
    }
    return frag;
}

Video2D stitch(std::vector<Fragment2D> fragments, double fps) {
    std::set<int> ids;
    for (const auto& f : fragments)
        if (!ids.insert(f.id).second)
            throw std::invalid_argument("stitch: duplicate fragment id " + std::to_string(f.id));
    for (const auto& f : fragments) {
        if (f.frames.empty()) throw std::invalid_argument("stitch: empty fragment");
        if (!fragments.front().frames.front().same_shape(f.frames.front()))
            throw std::invalid_argument("stitch: fragments have mixed frame dimensions");
    }

    std::stable_sort(fragments.begin(), fragments.end(),
                     [](const Fragment2D& a, const Fragment2D& b) {
                         return std::tie(a.start_frame, a.subvolume_id) <
                                std::tie(b.start_frame, b.subvolume_id);
                     });

    Video2D video;
    video.fps = fps;
    video.fragments = std::move(fragments);
    int offset = 0;
    for (const auto& f : video.fragments) {
        video.boundaries.push_back(offset);
        offset += static_cast<int>(f.frames.size());
    }
    video.total_frames = offset;
    return video;
}

}  // namespace vs360
